// SPDX-License-Identifier: Apache-2.0
//
// wishfade: Wishart surrogates for generalized-fading MIMO channels
// Copyright (C) 2026 The wishfade authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef WISHFADE_ERRORS_HPP
#define WISHFADE_ERRORS_HPP

#include <stdexcept>

namespace wishfade
{

// Parameter problems are reported with std::invalid_argument or
// std::domain_error. Everything below signals a numerical failure of an
// otherwise valid request.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A series or iteration did not meet its tolerance within the term budget.
class NonConvergenceError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

// A Monte-Carlo based estimator could not produce a value (e.g. no root in bracket).
class EstimationError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

} // namespace wishfade

#endif
