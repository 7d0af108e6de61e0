// Copyright 2026 The scholarrec Authors
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

#pragma once

#include "corpus.hpp"
#include "recommendation.hpp"
#include "semantic_map.hpp"
#include "similarity_index.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scholarrec {

// ---------------------------------------------------------------------------
// Removed-reference Top-N protocol (citation engine only).

inline constexpr std::size_t kTopNCutoffs[] = {1, 5, 10};

struct TopNResult {
  std::size_t seeds_tested = 0;
  std::map<std::size_t, std::size_t> hits_at{{1, 0}, {5, 0}, {10, 0}};
  std::size_t skipped = 0;

  bool operator==(const TopNResult&) const = default;
};

struct LeaveOneOutOptions {
  std::size_t k = kDefaultNeighborhood;
  std::size_t n_max = 10;
  // Remove each reference in turn instead of only the smallest id; every
  // (seed, reference) trial then counts towards seeds_tested.
  bool rotate_all = false;
};

// For each seed with >= 2 references, the link seed -> removed reference is
// taken out of the citation matrix, the neighbour lists of the remaining
// profile are recomputed on the masked matrix, and the removed reference's
// rank among n_max recommendations is recorded. Seeds that are unknown or
// have fewer than 2 references count as skipped. Empty seed list throws.
TopNResult leave_one_out(const Corpus& corpus, std::span<const ArticleId> seeds,
                         const LeaveOneOutOptions& options = {});

// ---------------------------------------------------------------------------
// Coverage and complementarity.

// An engine maps a seed to its recommendations; an empty list means the seed
// is not covered. Engines report unknown seeds as empty, not as errors.
using Engine = std::function<RecommendationList(const ArticleId&)>;

// Recommendations for every seed of a universe, keyed by seed.
using SeedOutcomes = std::map<ArticleId, RecommendationList>;

SeedOutcomes run_engine(const Engine& engine, std::span<const ArticleId> seeds);

// Adapters over the two recommenders. Unknown seeds map to an empty list.
// The returned engines reference `index` and `corpus`.
Engine citation_engine(const ItemSimilarityIndex& index, const Corpus& corpus, std::size_t n);
Engine usage_engine(const ItemSimilarityIndex& index, const Corpus& corpus, std::size_t n);

struct CoverageResult {
  double ratio = 0.0;
  std::vector<ArticleId> covered;  // ascending
};

CoverageResult coverage(const SeedOutcomes& outcomes);
CoverageResult coverage(const Engine& engine, std::span<const ArticleId> seeds);

struct Complementarity {
  std::size_t universe = 0;
  std::size_t joint = 0;
  double union_coverage = 0.0;
  std::size_t overlap_items = 0;  // (seed, article) pairs shared on joint seeds
};

// Both outcome maps must cover the same seed universe (InvalidArgument).
Complementarity complementarity(const SeedOutcomes& a, const SeedOutcomes& b);

// ---------------------------------------------------------------------------
// Diversity.

enum class DiversityWinner { A, B, Tie, ZeroBoth, Incomparable };

const char* to_string(DiversityWinner w) noexcept;

inline constexpr double kDiversityTieTolerance = 1e-9;

// Mean seed-to-recommendation journal similarity of one list, skipping
// recommendations whose journal has no text or no record. nullopt when
// nothing on the list is comparable.
std::optional<double> mean_seed_similarity(std::string_view seed, const RecommendationList& recs,
                                           const Corpus& corpus, const JournalVectorStore& store);

struct DiversityVerdict {
  DiversityWinner winner = DiversityWinner::Incomparable;
  std::optional<double> mean_a;
  std::optional<double> mean_b;
};

// Lower mean similarity = more diverse. ZeroBoth when every recommendation on
// both sides shares the seed's journal. Both lists must be non-empty.
DiversityVerdict diversity_compare(std::string_view seed, const RecommendationList& recs_a,
                                   const RecommendationList& recs_b, const JournalVectorStore& store,
                                   const Corpus& corpus);

// ---------------------------------------------------------------------------
// Full comparison run.

struct ComparisonConfig {
  std::string engine_a = "citation";
  std::string engine_b = "usage";
  std::size_t n = 10;
  // Echoed into report.json only.
  std::size_t k = kDefaultNeighborhood;
  std::size_t min_cooccurrence = 2;
  std::int64_t window = 1800;
  RandomIndexConfig map;
};

struct PerSeedRow {
  ArticleId seed;
  bool covered_a = false;
  bool covered_b = false;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::optional<double> mean_sim_a;
  std::optional<double> mean_sim_b;
  std::optional<DiversityWinner> winner;  // set on joint seeds only
  std::size_t overlap = 0;

  bool operator==(const PerSeedRow&) const = default;
};

struct ComparisonReport {
  std::size_t seeds_total = 0;
  std::size_t covered_a = 0;
  std::size_t covered_b = 0;
  double coverage_a = 0.0;
  double coverage_b = 0.0;
  std::size_t recs_a_total = 0;
  std::size_t recs_b_total = 0;
  std::size_t joint_seeds = 0;
  double joint_over_union = 0.0;
  double joint_over_sum = 0.0;
  double union_coverage = 0.0;
  std::size_t overlap_items = 0;
  std::size_t diversity_wins_a = 0;
  std::size_t diversity_wins_b = 0;
  std::size_t diversity_ties = 0;  // includes zero_diversity_both
  std::size_t zero_diversity_both = 0;
  std::size_t diversity_incomparable = 0;
  // Mean over seeds of each side's per-seed mean similarity.
  std::optional<double> mean_seed_similarity_a;
  std::optional<double> mean_seed_similarity_b;

  bool operator==(const ComparisonReport&) const = default;
};

struct ComparisonRun {
  ComparisonConfig config;
  ComparisonReport report;
  std::vector<PerSeedRow> rows;
};

ComparisonRun run_comparison(const Engine& engine_a, const Engine& engine_b, const Corpus& corpus,
                             std::span<const ArticleId> seeds, const JournalVectorStore& store,
                             const ComparisonConfig& config = {});

// Aggregates per-seed rows; run_comparison uses it, tests re-derive with it.
ComparisonReport aggregate(std::span<const PerSeedRow> rows);

void write_report_json(std::ostream& out, const ComparisonRun& run);
void write_per_seed_csv(std::ostream& out, std::span<const PerSeedRow> rows);
std::vector<PerSeedRow> read_per_seed_csv(std::istream& in);

// Writes report.json and per_seed.csv into out_dir (created if missing).
void write_comparison_files(const std::filesystem::path& out_dir, const ComparisonRun& run);

std::string topn_to_json(const TopNResult& result, const LeaveOneOutOptions& options);

}  // namespace scholarrec
