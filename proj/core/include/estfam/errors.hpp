#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace estfam {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A population-level constant is undefined for the given input
/// (mismatched lengths, fewer than two units, non-finite values,
/// zero mean or zero variance).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// Sample size outside 1 <= n < N.
class InvalidDesign : public Error {
 public:
  using Error::Error;
};

/// A sample with no observations.
class EmptySample : public Error {
 public:
  using Error::Error;
};

/// The lambda denominator a*mean_x + b vanishes.
class SingularLambda : public Error {
 public:
  using Error::Error;
};

/// The bracket base leaves the family's domain: zero base with integer
/// exponent, or non-positive base with fractional exponent.
class InvalidBase : public Error {
 public:
  using Error::Error;
};

/// lambda * g == 0, so the first-order MSE does not depend on alpha.
class NoInteriorOptimum : public Error {
 public:
  using Error::Error;
};

/// Percent relative efficiency needs a strictly positive MSE.
class ZeroMse : public Error {
 public:
  using Error::Error;
};

/// The number of subsets exceeds the exact-enumeration guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// An estimator failed on one subset during exact enumeration. Exact
/// expectations cannot silently skip subsets, so this aborts the run.
class DomainFailure : public Error {
 public:
  DomainFailure(const std::string& what, std::size_t subset_rank,
                std::size_t estimator_index)
      : Error(what),
        subset_rank_(subset_rank),
        estimator_index_(estimator_index) {}

  std::size_t subset_rank() const noexcept { return subset_rank_; }
  std::size_t estimator_index() const noexcept { return estimator_index_; }

 private:
  std::size_t subset_rank_;
  std::size_t estimator_index_;
};

/// An estimator failed on every Monte Carlo replication.
class AllSamplesFailed : public Error {
 public:
  AllSamplesFailed(const std::string& what, std::size_t estimator_index)
      : Error(what), estimator_index_(estimator_index) {}

  std::size_t estimator_index() const noexcept { return estimator_index_; }

 private:
  std::size_t estimator_index_;
};

/// Observed and analytic estimator lists have different lengths.
class MismatchedLists : public Error {
 public:
  using Error::Error;
};

}  // namespace estfam
