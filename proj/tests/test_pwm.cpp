/*
 * Copyright (c) 2026 The dcmg Authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <catch_amalgamated.hpp>

#include "dcmg/pwm.hpp"

TEST_CASE("gate is on at the start of a period")
{
    CHECK(dcmg::pwm_gate(0.0, 5e-5, 0.5));
}

TEST_CASE("gate is off past the duty fraction")
{
    CHECK_FALSE(dcmg::pwm_gate(2.6e-5, 5e-5, 0.5));
    CHECK(dcmg::pwm_gate(2.4e-5, 5e-5, 0.5));
}

TEST_CASE("zero duty never turns on and full duty never turns off")
{
    for (double t : {0.0, 1e-5, 2.5e-5, 4.99e-5, 1.0}) {
        CHECK_FALSE(dcmg::pwm_gate(t, 5e-5, 0.0));
        CHECK(dcmg::pwm_gate(t, 5e-5, 1.0));
    }
}

TEST_CASE("step-indexed gate matches the continuous gate on the grid")
{
    for (std::int64_t k = 0; k < 200; ++k) {
        CHECK(dcmg::pwm_gate_at_step(k, 50, 0.3) == ((k % 50) < 15));
    }
    CHECK_FALSE(dcmg::pwm_gate_at_step(7, 50, 0.0));
    CHECK(dcmg::pwm_gate_at_step(49, 50, 1.0));
}

TEST_CASE("on fraction splits only the edge step")
{
    // duty 0.25 over 50 steps: edge at 12.5 steps.
    CHECK(dcmg::pwm_on_fraction(0, 50, 0.25) == 1.0);
    CHECK(dcmg::pwm_on_fraction(11, 50, 0.25) == 1.0);
    CHECK(dcmg::pwm_on_fraction(12, 50, 0.25) == 0.5);
    CHECK(dcmg::pwm_on_fraction(13, 50, 0.25) == 0.0);
    CHECK(dcmg::pwm_on_fraction(62, 50, 0.25) == 0.5);
    double total = 0.0;
    for (std::int64_t k = 0; k < 50; ++k) total += dcmg::pwm_on_fraction(k, 50, 0.37);
    CHECK(total == Catch::Approx(0.37 * 50).epsilon(1e-12));
}
