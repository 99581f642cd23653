#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qupid/eval.hpp"
#include "qupid/rng.hpp"

namespace qupid {

namespace {

// Class index -> member indices, shuffled deterministically. Classes are
// visited in ascending label order so the generator stream is reproducible.
std::map<int, std::vector<std::size_t>> shuffled_classes(const std::vector<int>& labels,
                                                         std::uint64_t seed) {
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  Rng rng(seed);
  for (auto& [label, members] : by_class) {
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[rng.next_below(i)]);
    }
  }
  return by_class;
}

}  // namespace

TrainTestSplit split_train_test(const std::vector<int>& labels, double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) throw std::invalid_argument("ratio must be in [0, 1]");
  if (labels.empty()) throw std::invalid_argument("cannot split an empty set");
  auto by_class = shuffled_classes(labels, seed);
  for (const auto& [label, members] : by_class) {
    if (members.size() < 2) {
      throw std::invalid_argument("stratified split requires >= 2 members per class");
    }
  }

  const std::size_t n = labels.size();
  const auto total_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));

  // Largest-remainder apportionment of train slots across classes.
  struct Share {
    int label;
    std::size_t base;
    double frac;
  };
  std::vector<Share> shares;
  std::size_t assigned = 0;
  for (const auto& [label, members] : by_class) {
    const double quota = ratio * static_cast<double>(members.size());
    const auto base = static_cast<std::size_t>(std::floor(quota));
    shares.push_back({label, base, quota - std::floor(quota)});
    assigned += base;
  }
  std::stable_sort(shares.begin(), shares.end(), [](const Share& a, const Share& b) {
    if (a.frac != b.frac) return a.frac > b.frac;
    return a.label < b.label;
  });
  std::size_t remainder = total_train - assigned;
  for (Share& share : shares) {
    if (remainder == 0) break;
    if (share.base < by_class[share.label].size()) {
      share.base += 1;
      remainder -= 1;
    }
  }

  TrainTestSplit split;
  for (const Share& share : shares) {
    const std::vector<std::size_t>& members = by_class[share.label];
    for (std::size_t i = 0; i < members.size(); ++i) {
      (i < share.base ? split.train : split.test).push_back(members[i]);
    }
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

std::vector<std::vector<std::size_t>> k_fold(const std::vector<int>& labels, std::size_t k,
                                             std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > n) throw std::invalid_argument("k exceeds the number of items");
  auto by_class = shuffled_classes(labels, seed);

  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t position = 0;
  for (const auto& [label, members] : by_class) {
    for (const std::size_t index : members) {
      folds[position % k].push_back(index);
      ++position;
    }
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

}  // namespace qupid
