#pragma once

#include <cstdint>
#include <vector>

namespace qupid {

struct TrainTestSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified split: each class contributes its proportional share of the
/// train set (largest-remainder apportionment of round(ratio * n) slots).
/// Deterministic given the seed; indices returned sorted ascending.
/// Throws if any class has fewer than 2 members.
TrainTestSplit split_train_test(const std::vector<int>& labels, double ratio, std::uint64_t seed);

/// Stratified k-fold partition of [0, n): per-class shuffles concatenated and
/// dealt round-robin, so fold sizes differ by at most 1 overall and per class.
/// Throws if k < 1 or k > n.
std::vector<std::vector<std::size_t>> k_fold(const std::vector<int>& labels, std::size_t k,
                                             std::uint64_t seed);

}  // namespace qupid
