// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "hecke_bose/hecke_bose.hpp"

using namespace hecke_bose;

namespace {

struct OffsetGuard {
  explicit OffsetGuard(int offset) { test_hooks::d_plus_offset = offset; }
  ~OffsetGuard() { test_hooks::d_plus_offset = 0; }
};

}  // namespace

TEST(Hooks, CleanRunPasses) {
  const auto report = run_suite("theorem", Params(2, 2, Rational(-1, 3), Rational(2, 5)), 3, 7);
  EXPECT_TRUE(report.passed());
  EXPECT_GT(report.checks_run, 0);
}

TEST(Hooks, CorruptedCountIsDetected) {
  OffsetGuard guard(1);
  const auto report = run_suite("theorem", Params(2, 2, Rational(-1, 3), Rational(2, 5)), 3, 7);
  EXPECT_FALSE(report.passed());
}

TEST(Hooks, CorruptedCountBreaksLemma) {
  OffsetGuard guard(1);
  const auto report = run_suite("lemma-main", Params(3, 2, Rational(1, 2), Rational(3, 4)), 2, 5);
  EXPECT_FALSE(report.passed());
}
