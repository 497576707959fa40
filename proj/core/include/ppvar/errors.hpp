// Copyright 2026 The ppvar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PPVAR_ERRORS_HPP_
#define PPVAR_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace ppvar {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lag configuration incompatible with the data (e.g. lag >= series length).
class InvalidLagError : public Error {
 public:
  using Error::Error;
};

// Model rejected by the spectral-radius gate.
class StationarityError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

// Privacy-budget calibration impossible for the requested parameters.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

// A secure protocol could not be executed as configured.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Input file rejected; carries the offending row numbers (1-based data rows).
class IngestionError : public Error {
 public:
  IngestionError(const std::string& what, std::vector<int> rows)
      : Error(what), offending_rows(std::move(rows)) {}
  std::vector<int> offending_rows;
};

}  // namespace ppvar

#endif  // PPVAR_ERRORS_HPP_
