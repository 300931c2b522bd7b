/*
Copyright 2026 The gradadv Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace gradadv {

// Scalar type of every computation in the library: binary floating point with a
// 100 decimal digit (333 bit) significand and a 2^30 bit exponent range.
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<100, boost::multiprecision::allocate_stack>,
    boost::multiprecision::et_off>;

using boost::multiprecision::abs;
using boost::multiprecision::ceil;
using boost::multiprecision::exp;
using boost::multiprecision::isfinite;
using boost::multiprecision::isinf;
using boost::multiprecision::isnan;
using boost::multiprecision::ldexp;
using boost::multiprecision::log;
using boost::multiprecision::pow;
using boost::multiprecision::sqrt;

enum class ErrorKind {
    invalid_argument,
    domain,
    overflow,
    monotonicity,
    singular,
    disjointness,
    io
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& what) : Error(ErrorKind::invalid_argument, what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};

// Raised when a requested quantity leaves the representable range.
// max_feasible carries the largest admissible budget when one is known.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& what, long long max_feasible = -1)
        : Error(ErrorKind::overflow, what), max_feasible_(max_feasible) {}

    long long max_feasible() const noexcept { return max_feasible_; }

private:
    long long max_feasible_;
};

class MonotonicityError : public Error {
public:
    explicit MonotonicityError(const std::string& what) : Error(ErrorKind::monotonicity, what) {}
};

class SingularSystemError : public Error {
public:
    explicit SingularSystemError(const std::string& what) : Error(ErrorKind::singular, what) {}
};

class DisjointnessError : public Error {
public:
    explicit DisjointnessError(const std::string& what) : Error(ErrorKind::disjointness, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

// Widens the Real exponent range of the calling thread to the largest supported.
// Library entry points call it; it is cheap after the first call per thread.
void ensure_real_range();

// Shortest decimal that reads back exactly.
std::string format_real(Real x);
// Rounded to the given number of significant digits, for display.
std::string format_real(Real x, int digits);
// Decimal, "inf", "-inf" or "nan"; throws InvalidArgumentError otherwise.
Real parse_real(const std::string& text);

} // namespace gradadv
