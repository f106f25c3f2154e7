#include <atomic>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "symratio/parallel.hpp"

using namespace symratio;

TEST(Seeds, SplitIsDeterministicAndDistinct) {
  EXPECT_EQ(split_seed(42, 7), split_seed(42, 7));
  EXPECT_NE(split_seed(42, 7), split_seed(42, 8));
  EXPECT_NE(split_seed(42, 7), split_seed(43, 7));
  auto a = stream_rng(5, 3);
  auto b = stream_rng(5, 3);
  EXPECT_EQ(a(), b());
}

TEST(Seeds, RandomUnitVectorHasUnitNorm) {
  auto rng = stream_rng(0, 0);
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(random_unit_vector(rng, n).norm(), 1.0, 1e-15);
}

TEST(ForEachIndex, VisitsEveryIndexOnce) {
  for (Execution exec : {Execution::serial, Execution::parallel}) {
    std::vector<int> hits(1000, 0);
    for_each_index(hits.size(), exec, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) EXPECT_EQ(h, 1);
  }
}

TEST(ForEachIndex, SerialAndParallelStreamsAgree) {
  std::vector<double> serial(257), parallel(257);
  auto fill = [](std::vector<double>& out, Execution exec) {
    for_each_index(out.size(), exec, [&](std::size_t i) {
      auto rng = stream_rng(99, i);
      out[i] = random_gaussian_vector(rng, 4).sum();
    });
  };
  fill(serial, Execution::serial);
  fill(parallel, Execution::parallel);
  EXPECT_EQ(serial, parallel);
}

TEST(ForEachIndex, RethrowsWorkerException) {
  std::atomic<int> done{0};
  EXPECT_THROW(for_each_index(100, Execution::parallel,
                              [&](std::size_t i) {
                                if (i == 37) throw std::runtime_error("boom");
                                ++done;
                              }),
               std::runtime_error);
  EXPECT_EQ(done.load(), 99);
}

TEST(Workers, CountCanBeSet) {
  const int before = worker_count();
  set_worker_count(2);
  EXPECT_EQ(worker_count(), 2);
  set_worker_count(before);
}
