// Copyright 2026 The weakval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace weakval {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Construction / shape errors.
class DimMismatch : public Error { public: using Error::Error; };
class ZeroVector : public Error { public: using Error::Error; };
class NotHermitian : public Error { public: using Error::Error; };
class NotProjector : public Error { public: using Error::Error; };
class PreconditionFailed : public Error { public: using Error::Error; };

// Selection / weak-value errors.
class OrthogonalSelection : public Error { public: using Error::Error; };
class UndefinedWeakValue : public Error { public: using Error::Error; };
class IncompleteBasis : public Error { public: using Error::Error; };
class NotProportional : public Error { public: using Error::Error; };

// Scenario ingestion errors.
class ParseError : public Error { public: using Error::Error; };
class ValidationError : public Error { public: using Error::Error; };
class UnknownLabel : public Error { public: using Error::Error; };

// Numerical-procedure errors.
class PostSelectionVanished : public Error { public: using Error::Error; };
class FitUnstable : public Error { public: using Error::Error; };

/// Lattice-meet iteration ran out of iterations before the tail of the
/// power sequence settled; carries the last observed defect.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double defect, int iterations)
      : Error(what), defect(defect), iterations(iterations) {}

  double defect;
  int iterations;
};

}  // namespace weakval
