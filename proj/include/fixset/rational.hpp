#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "fixset/errors.hpp"

namespace fixset {

// An exact probability: an arbitrary-precision rational constrained to [0,1].
// All exact proportions computed by the library travel through this type so
// that oracle comparisons are exact equality, never float comparisons.
class ExactProbability {
 public:
  ExactProbability() : value_(0) {}

  explicit ExactProbability(mpq_class value) : value_(std::move(value)) {
    value_.canonicalize();
    if (value_ < 0 || value_ > 1)
      throw DomainError("probability outside [0,1]: " + value_.get_str());
  }

  ExactProbability(const mpz_class& numerator, const mpz_class& denominator)
      : ExactProbability(mpq_class(numerator, denominator)) {}

  const mpq_class& value() const { return value_; }

  double to_double() const { return value_.get_d(); }

  // Lossless "num/den" rendering with an explicit denominator ("1/1", "5/12").
  std::string to_fraction() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  static ExactProbability from_fraction(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
      throw DomainError("unparsable fraction: " + text);
    return ExactProbability(q);
  }

  friend bool operator==(const ExactProbability& a, const ExactProbability& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExactProbability& a, const ExactProbability& b) {
    return a.value_ != b.value_;
  }
  friend bool operator<(const ExactProbability& a, const ExactProbability& b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExactProbability& a, const ExactProbability& b) {
    return a.value_ <= b.value_;
  }

 private:
  mpq_class value_;
};

}  // namespace fixset
