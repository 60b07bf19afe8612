// Copyright 2026 The eco Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only: random bag-of-words vectors drawn from a topic mixture, the
// shape real code vectors have (functions cluster by idiom).

#ifndef ECO_TESTS_ANN_CORPUS_H_
#define ECO_TESTS_ANN_CORPUS_H_

#include <map>
#include <random>
#include <string>
#include <vector>

#include "eco/embedding_index.h"

namespace eco::testing {

class TopicCorpus {
 public:
  TopicCorpus(std::uint64_t seed, int vocab = 400, int topics = 24,
              int terms_per_topic = 15)
      : rng_(seed), vocab_(vocab) {
    std::uniform_int_distribution<int> term(0, vocab - 1);
    for (int t = 0; t < topics; ++t) {
      std::vector<int> terms;
      for (int i = 0; i < terms_per_topic; ++i) terms.push_back(term(rng_));
      topics_.push_back(terms);
    }
  }

  BowVector sample() {
    std::uniform_int_distribution<size_t> topic(0, topics_.size() - 1);
    std::uniform_int_distribution<int> length(20, 60);
    std::uniform_int_distribution<int> any(0, vocab_ - 1);
    std::bernoulli_distribution on_topic(0.8);
    const std::vector<int>& terms = topics_[topic(rng_)];
    std::uniform_int_distribution<size_t> pick(0, terms.size() - 1);
    std::map<std::string, double> counts;
    const int n = length(rng_);
    for (int i = 0; i < n; ++i) {
      const int t = on_topic(rng_) ? terms[pick(rng_)] : any(rng_);
      counts["t" + std::to_string(t)] += 1.0;
    }
    return BowVector(std::move(counts));
  }

  std::vector<IndexEntry> entries(int n) {
    std::vector<IndexEntry> out;
    for (int i = 0; i < n; ++i) {
      char id[16];
      std::snprintf(id, sizeof(id), "f%05d", i);
      out.push_back({id, sample(), std::nullopt});
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
  int vocab_;
  std::vector<std::vector<int>> topics_;
};

// Mean overlap of approximate and exact top-k over `queries` fresh vectors.
inline double mean_recall(const VectorIndex& index, TopicCorpus& corpus,
                          int queries, int k) {
  double total = 0.0;
  for (int q = 0; q < queries; ++q) {
    const BowVector v = corpus.sample();
    const auto exact = query_topk(index, v, k, true);
    const auto approx = query_topk(index, v, k, false);
    int hit = 0;
    for (const Neighbor& a : approx) {
      for (const Neighbor& e : exact) hit += a.id == e.id;
    }
    total += static_cast<double>(hit) / static_cast<double>(exact.size());
  }
  return total / queries;
}

}  // namespace eco::testing

#endif  // ECO_TESTS_ANN_CORPUS_H_
