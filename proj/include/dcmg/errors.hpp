/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <stdexcept>
#include <string>

namespace dcmg {

/// Scenario or parameter rejected before any stepping. `key()` is the dotted
/// path of the offending field when one applies (e.g. "bus.c_bus").
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    explicit ValidationError(const std::string& what) : ValidationError(std::string{}, what) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Numerical abort during a run: blow-up, non-finite derivative, depleted
/// battery, solver non-convergence, protection trip.
class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dcmg
