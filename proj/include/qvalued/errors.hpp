/*
 * Copyright 2026 The qvalued Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace qvalued {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configurations or points of incompatible Q / dimension were combined.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// An enumeration was requested beyond its hard size guard.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Two anchors coincide but carry different values.
class NonLipschitzError : public Error {
 public:
  using Error::Error;
};

/// The query point coincides with an anchor where the value is forced.
class CoincidenceError : public Error {
 public:
  using Error::Error;
};

/// A search space or grid exceeds the configured evaluation budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed instance text. The message carries the field path or line.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qvalued
