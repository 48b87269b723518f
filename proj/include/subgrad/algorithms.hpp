#pragma once

// Online learners over a ConvexDomain.
//
// Each learner is a single-owner value: construction yields the first action,
// and step() consumes the cost of the previous turn and returns the next
// action. The turn-1 cost is paid by the caller against the initial action().

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "subgrad/errors.hpp"
#include "subgrad/geometry.hpp"
#include "subgrad/point.hpp"

namespace subgrad {

namespace detail {

inline void require_step_parameter(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidParameter("step parameter eta must be positive and finite");
  }
}

inline void require_cost(const ConvexDomain& domain, const Point& cost) {
  if (cost.size() != domain.dimension()) {
    throw InvalidInput("cost of dimension " + std::to_string(cost.size()) +
                       " for a domain of dimension " + std::to_string(domain.dimension()));
  }
  if (!cost.all_finite()) throw InvalidInput("cost has non-finite coordinates");
}

}  // namespace detail

/// Lazy anytime subgradient (dual averaging with step eta / sqrt(n - 1)).
///
/// Plays x_1 = P(0), then x_n = P(y_n) with
/// y_n = -eta * (a_1 + ... + a_{n-1}) / sqrt(n - 1).
class LazySubgradient {
 public:
  LazySubgradient(ConvexDomain domain, double eta)
      : domain_(std::move(domain)), eta_(eta), cum_cost_(domain_.dimension()) {
    detail::require_step_parameter(eta_);
    action_ = domain_.project(Point(domain_.dimension()));
  }

  /// Consumes a_{n-1} and returns x_n.
  const Point& step(const Point& cost) {
    detail::require_cost(domain_, cost);
    cum_cost_ += cost;
    ++turn_;
    unprojected_ = cum_cost_ * (-eta_ / std::sqrt(static_cast<double>(turn_ - 1)));
    action_ = domain_.project(*unprojected_);
    return action_;
  }

  /// y_n for the current turn; undefined before the first cost arrives.
  const Point& unprojected() const {
    if (!unprojected_) throw NotYetDefined("no unprojected iterate at turn 1");
    return *unprojected_;
  }

  const Point& action() const noexcept { return action_; }
  std::size_t turn() const noexcept { return turn_; }
  const Point& cumulative_cost() const noexcept { return cum_cost_; }
  double eta() const noexcept { return eta_; }
  const ConvexDomain& domain() const noexcept { return domain_; }

 private:
  ConvexDomain domain_;
  double eta_;
  std::size_t turn_ = 1;
  Point cum_cost_;
  std::optional<Point> unprojected_;
  Point action_;
};

/// Greedy (online gradient descent) subgradient:
/// y_{n+1} = x_n - (eta / sqrt(n)) a_n, x_{n+1} = P(y_{n+1}).
class GreedySubgradient {
 public:
  GreedySubgradient(ConvexDomain domain, double eta) : domain_(std::move(domain)), eta_(eta) {
    detail::require_step_parameter(eta_);
    action_ = domain_.project(Point(domain_.dimension()));
  }

  /// Starts from an arbitrary feasible action x_n at turn n.
  GreedySubgradient(ConvexDomain domain, double eta, Point action, std::size_t turn)
      : domain_(std::move(domain)), eta_(eta), turn_(turn), action_(std::move(action)) {
    detail::require_step_parameter(eta_);
    if (turn_ == 0) throw InvalidParameter("turn counter starts at 1");
    if (!domain_.contains(action_)) throw InvalidInput("starting action is not in the domain");
  }

  /// Consumes a_n and returns x_{n+1}.
  const Point& step(const Point& cost) {
    detail::require_cost(domain_, cost);
    unprojected_ = action_ - cost * (eta_ / std::sqrt(static_cast<double>(turn_)));
    action_ = domain_.project(*unprojected_);
    ++turn_;
    return action_;
  }

  const Point& unprojected() const {
    if (!unprojected_) throw NotYetDefined("no unprojected iterate at turn 1");
    return *unprojected_;
  }

  const Point& action() const noexcept { return action_; }
  std::size_t turn() const noexcept { return turn_; }
  double eta() const noexcept { return eta_; }
  const ConvexDomain& domain() const noexcept { return domain_; }

 private:
  ConvexDomain domain_;
  double eta_;
  std::size_t turn_ = 1;
  std::optional<Point> unprojected_;
  Point action_;
};

/// Follow-the-leader on the simplex: the vertex of the smallest cumulative
/// cost, ties to the smallest index. The first action is e_1.
class FollowTheLeader {
 public:
  explicit FollowTheLeader(ConvexDomain domain)
      : domain_(std::move(domain)), cum_cost_(domain_.dimension()) {
    if (!domain_.is_simplex()) throw Unsupported("follow-the-leader is only supported on the simplex");
    action_ = leader();
  }

  const Point& step(const Point& cost) {
    detail::require_cost(domain_, cost);
    cum_cost_ += cost;
    ++turn_;
    action_ = leader();
    return action_;
  }

  const Point& action() const noexcept { return action_; }
  std::size_t turn() const noexcept { return turn_; }
  const Point& cumulative_cost() const noexcept { return cum_cost_; }
  const ConvexDomain& domain() const noexcept { return domain_; }

 private:
  Point leader() const { return Point::unit(cum_cost_.size(), argmin_index(cum_cost_)); }

  ConvexDomain domain_;
  std::size_t turn_ = 1;
  Point cum_cost_;
  Point action_;
};

}  // namespace subgrad
