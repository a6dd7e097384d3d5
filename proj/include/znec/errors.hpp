#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace znec {

/// Base class for every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (mixed moduli, wrong ring, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when an element shares a factor with the modulus. The gcd is kept
/// since a nontrivial divisor of N is useful output in its own right.
class NonInvertible : public Error {
 public:
  explicit NonInvertible(mpz_class gcd)
      : Error("element is not invertible (gcd " + gcd.get_str() + ")"), gcd_(std::move(gcd)) {}
  const mpz_class& gcd() const { return gcd_; }

 private:
  mpz_class gcd_;
};

class NotCoprime : public Error {
 public:
  using Error::Error;
};

class NotPrimitive : public Error {
 public:
  using Error::Error;
};

class NotOnCurve : public Error {
 public:
  using Error::Error;
};

class SingularCurve : public Error {
 public:
  SingularCurve(mpz_class divisor, mpz_class prime)
      : Error("discriminant is not a unit: gcd(disc, N) = " + divisor.get_str() +
              " (singular modulo " + prime.get_str() + ")"),
        divisor_(std::move(divisor)),
        prime_(std::move(prime)) {}
  const mpz_class& divisor() const { return divisor_; }
  const mpz_class& prime() const { return prime_; }

 private:
  mpz_class divisor_;
  mpz_class prime_;
};

class BadCharacteristic : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Neither addition law produced a primitive triple; only reachable when the
/// inputs are not points of one valid curve.
class BothLawsVanish : public Error {
 public:
  using Error::Error;
};

class NotAnomalous : public Error {
 public:
  using Error::Error;
};

class NotCyclic : public Error {
 public:
  using Error::Error;
};

class ThetaZero : public Error {
 public:
  using Error::Error;
};

class LiftRetryExhausted : public Error {
 public:
  using Error::Error;
};

class NoCurveOfOrder : public Error {
 public:
  using Error::Error;
};

namespace detail {
[[noreturn]] inline void contract_failed(const char* what) { throw ContractViolation(what); }
}  // namespace detail

}  // namespace znec

#define ZNEC_EXPECTS(cond, msg)                    \
  do {                                             \
    if (!(cond)) ::znec::detail::contract_failed(msg); \
  } while (false)
