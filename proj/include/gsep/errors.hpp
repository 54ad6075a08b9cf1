// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace gsep {

// Input document could not be read as a state description at all.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally readable, but array/matrix sizes do not match the mode count.
class dimension_error : public std::runtime_error {
 public:
  explicit dimension_error(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input describing an inadmissible or unphysical state.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A numerical guarantee failed at run time (e.g. a determinant that must be
// real came back with a large imaginary residue).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gsep
