// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace gsep {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace gsep
