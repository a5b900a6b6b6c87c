// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace fracmix {

/// Exit codes: 0 success, 1 bad input, 2 numerical failure.
int cli_main(int argc, char** argv);

}  // namespace fracmix
