// Copyright 2026 The fracmix Authors
// SPDX-License-Identifier: Apache-2.0

#include "fracmix/cli.hpp"

int main(int argc, char** argv) { return fracmix::cli_main(argc, argv); }
