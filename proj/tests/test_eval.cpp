#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qupid/eval.hpp"

using namespace qupid;

namespace {

std::vector<int> balanced_labels(std::size_t per_class, int n_classes) {
  std::vector<int> labels;
  for (int c = 0; c < n_classes; ++c) {
    labels.insert(labels.end(), per_class, c);
  }
  return labels;
}

std::vector<std::size_t> class_members(const TrainTestSplit& split,
                                       const std::vector<int>& labels, int cls, bool train) {
  std::vector<std::size_t> out;
  for (const std::size_t i : train ? split.train : split.test) {
    if (labels[i] == cls) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST_CASE("stratified split apportions train slots per class") {
  const std::vector<int> labels = balanced_labels(5, 2);
  const TrainTestSplit split = split_train_test(labels, 0.7, 7);
  CHECK(split.train.size() == 7);
  CHECK(split.test.size() == 3);
  // round(0.7 * 10) = 7 slots; equal class shares 3.5 each, the remainder
  // slot goes to the smaller label on the fractional tie.
  CHECK(class_members(split, labels, 0, true).size() == 4);
  CHECK(class_members(split, labels, 1, true).size() == 3);
}

TEST_CASE("split partitions the index range") {
  const std::vector<int> labels = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
  const TrainTestSplit split = split_train_test(labels, 0.5, 11);
  std::set<std::size_t> all(split.train.begin(), split.train.end());
  all.insert(split.test.begin(), split.test.end());
  CHECK(all.size() == labels.size());
  CHECK(std::is_sorted(split.train.begin(), split.train.end()));
  CHECK(std::is_sorted(split.test.begin(), split.test.end()));
}

TEST_CASE("extreme ratios keep whole classes intact") {
  const std::vector<int> labels = balanced_labels(3, 2);
  const TrainTestSplit all_train = split_train_test(labels, 1.0, 5);
  CHECK(all_train.train.size() == 6);
  CHECK(all_train.test.empty());
  const TrainTestSplit all_test = split_train_test(labels, 0.0, 5);
  CHECK(all_test.train.empty());
  CHECK(all_test.test.size() == 6);
}

TEST_CASE("splits are deterministic and seed sensitive") {
  const std::vector<int> labels = balanced_labels(10, 2);
  const TrainTestSplit a = split_train_test(labels, 0.7, 1);
  const TrainTestSplit b = split_train_test(labels, 0.7, 1);
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  const TrainTestSplit c = split_train_test(labels, 0.7, 2);
  CHECK(a.train != c.train);
}

TEST_CASE("a class with fewer than two members cannot be split") {
  CHECK_THROWS_AS(split_train_test({0, 0, 1}, 0.7, 7), std::invalid_argument);
  CHECK_THROWS_AS(split_train_test({}, 0.7, 7), std::invalid_argument);
}

TEST_CASE("k-fold partitions with near-equal sizes per class") {
  const std::vector<int> labels = balanced_labels(5, 2);
  const auto folds = k_fold(labels, 3, 7);
  REQUIRE(folds.size() == 3);

  std::vector<std::size_t> sizes;
  std::set<std::size_t> all;
  for (const auto& fold : folds) {
    sizes.push_back(fold.size());
    CHECK(std::is_sorted(fold.begin(), fold.end()));
    all.insert(fold.begin(), fold.end());
  }
  CHECK(all.size() == 10);
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{3, 3, 4});

  for (const auto& fold : folds) {
    std::size_t class0 = 0;
    for (const std::size_t i : fold) {
      if (labels[i] == 0) ++class0;
    }
    CHECK(class0 >= 1);  // stratification: both classes appear in every fold
    CHECK(class0 <= 2);
  }
}

TEST_CASE("k-fold edge cases") {
  const std::vector<int> labels = {0, 1, 0, 1};
  const auto one = k_fold(labels, 1, 3);
  REQUIRE(one.size() == 1);
  CHECK(one[0].size() == 4);

  const auto singletons = k_fold(labels, 4, 3);
  for (const auto& fold : singletons) CHECK(fold.size() == 1);

  CHECK_THROWS_AS(k_fold(labels, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(k_fold(labels, 5, 3), std::invalid_argument);
}

TEST_CASE("k-fold is deterministic in the seed") {
  const std::vector<int> labels = balanced_labels(8, 3);
  CHECK(k_fold(labels, 4, 9) == k_fold(labels, 4, 9));
  CHECK(k_fold(labels, 4, 9) != k_fold(labels, 4, 10));
}
