#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace fbl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class NotALattice : public Error {
 public:
  NotALattice(std::string msg, int x, int y) : Error(std::move(msg)), pair_{x, y} {}
  std::array<int, 2> pair() const { return pair_; }

 private:
  std::array<int, 2> pair_;
};

class NotDistributive : public Error {
 public:
  NotDistributive(std::string msg, std::array<int, 3> witness)
      : Error(std::move(msg)), witness_(witness) {}
  /// (x, y, z) with x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z).
  std::array<int, 3> witness() const { return witness_; }

 private:
  std::array<int, 3> witness_;
};

class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

class NonMonotoneValues : public Error {
 public:
  using Error::Error;
};

class NotLocallyComplemented : public Error {
 public:
  using Error::Error;
};

class GeneratorNotInSublattice : public Error {
 public:
  using Error::Error;
};

class EpsilonOutOfRange : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fbl
