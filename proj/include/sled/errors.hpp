// Copyright 2026 The sledsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLED_ERRORS_HPP
#define SLED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sled {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// Caller violated a documented precondition (shape, Hermiticity, basis).
class ContractError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "contract"; }
};

/// A numerical procedure failed to reach its tolerance. Carries the last two
/// estimates so callers can judge how far off it was.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double coarse, double fine)
      : Error(what), coarse_(coarse), fine_(fine) {}
  const char* kind() const noexcept override { return "convergence"; }
  double coarse() const noexcept { return coarse_; }
  double fine() const noexcept { return fine_; }

 private:
  double coarse_;
  double fine_;
};

/// Input is well-formed but yields a degenerate physical object (empty OAM
/// selection sector, zero total rate, matrix that is not PSD).
class NumericalError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numerical"; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

class IoError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "io"; }
};

/// Rethrows the in-flight exception with `context` appended to its message,
/// keeping the concrete error type. Call only from inside a catch block.
[[noreturn]] inline void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string(e.what()) + " " + context, e.coarse(),
                           e.fine());
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " " + context);
  } catch (const ContractError& e) {
    throw ContractError(std::string(e.what()) + " " + context);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " " + context);
  }
}

}  // namespace sled

#endif  // SLED_ERRORS_HPP
