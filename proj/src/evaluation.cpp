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

#include "evaluation.hpp"
#include "citation_recommender.hpp"
#include "format.hpp"
#include "usage_recommender.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

namespace scholarrec {

namespace {

using Index = SparseInteractionMatrix::Index;

std::optional<Index> find_sorted(const std::vector<std::string>& ids, std::string_view id) {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<Index>(it - ids.begin());
}

std::optional<double> parse_optional_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

std::optional<DiversityWinner> parse_winner(const std::string& s) {
  for (auto w : {DiversityWinner::A, DiversityWinner::B, DiversityWinner::Tie,
                 DiversityWinner::ZeroBoth, DiversityWinner::Incomparable}) {
    if (s == to_string(w)) return w;
  }
  if (s.empty()) return std::nullopt;
  throw Error(ErrorCode::Parse, "unknown winner '" + s + "'");
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

TopNResult leave_one_out(const Corpus& corpus, std::span<const ArticleId> seeds,
                         const LeaveOneOutOptions& options) {
  if (seeds.empty()) throw Error(ErrorCode::InvalidArgument, "empty seed list");
  if (options.n_max < 10) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 10");

  const auto matrix = build_citation_matrix(corpus);
  const IndexParams params{options.k, 1};
  TopNResult result;

  for (const auto& seed : seeds) {
    const Article* article = corpus.find(seed);
    if (article == nullptr || article->references.size() < 2) {
      ++result.skipped;
      continue;
    }

    std::vector<ArticleId> refs = article->references;
    std::sort(refs.begin(), refs.end());
    const std::size_t trials = options.rotate_all ? refs.size() : 1;
    const Index row = *find_sorted(matrix.row_ids(), seed);

    for (std::size_t t = 0; t < trials; ++t) {
      const ArticleId& removed = refs[t];
      std::vector<ArticleId> profile;
      for (const auto& r : refs) {
        if (r != removed) profile.push_back(r);
      }
      if (std::find(profile.begin(), profile.end(), removed) != profile.end()) {
        throw std::logic_error("removed reference still present in masked profile");
      }

      const Index col = *find_sorted(matrix.col_ids(), removed);
      NeighborScanner scanner(matrix, params, NeighborScanner::MaskedLink{row, col});
      std::vector<std::vector<Neighbor>> lists(matrix.cols());
      for (const auto& p : profile) {
        const Index item = *find_sorted(matrix.col_ids(), p);
        lists[item] = scanner.scan(item);
      }
      const ItemSimilarityIndex masked({}, matrix.col_ids(), std::move(lists));

      const auto recs = recommend_for_profile(profile, seed, options.n_max, masked);
      ++result.seeds_tested;
      auto hit = std::find_if(recs.begin(), recs.end(),
                              [&](const Recommendation& r) { return r.article == removed; });
      if (hit == recs.end()) continue;
      for (auto& [cutoff, hits] : result.hits_at) {
        if (hit->rank <= cutoff) ++hits;
      }
    }
  }
  return result;
}

SeedOutcomes run_engine(const Engine& engine, std::span<const ArticleId> seeds) {
  SeedOutcomes out;
  for (const auto& s : seeds) out.emplace(s, engine(s));
  return out;
}

namespace {

template <typename Fn>
Engine not_found_as_empty(Fn fn) {
  return [fn](const ArticleId& seed) -> RecommendationList {
    try {
      return fn(seed);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotFound) return {};
      throw;
    }
  };
}

}  // namespace

Engine citation_engine(const ItemSimilarityIndex& index, const Corpus& corpus, std::size_t n) {
  return not_found_as_empty(
      [&index, &corpus, n](const ArticleId& s) { return recommend(s, n, index, corpus); });
}

Engine usage_engine(const ItemSimilarityIndex& index, const Corpus& corpus, std::size_t n) {
  return not_found_as_empty(
      [&index, &corpus, n](const ArticleId& s) { return recommend_by_usage(s, n, index, &corpus); });
}

CoverageResult coverage(const SeedOutcomes& outcomes) {
  CoverageResult c;
  for (const auto& [seed, recs] : outcomes) {
    if (!recs.empty()) c.covered.push_back(seed);
  }
  c.ratio = outcomes.empty() ? 0.0
                             : static_cast<double>(c.covered.size()) /
                                   static_cast<double>(outcomes.size());
  return c;
}

CoverageResult coverage(const Engine& engine, std::span<const ArticleId> seeds) {
  return coverage(run_engine(engine, seeds));
}

Complementarity complementarity(const SeedOutcomes& a, const SeedOutcomes& b) {
  if (a.size() != b.size() ||
      !std::equal(a.begin(), a.end(), b.begin(),
                  [](const auto& x, const auto& y) { return x.first == y.first; })) {
    throw Error(ErrorCode::InvalidArgument, "outcomes cover different seed universes");
  }
  Complementarity c;
  c.universe = a.size();
  std::size_t either = 0;
  auto ib = b.begin();
  for (auto ia = a.begin(); ia != a.end(); ++ia, ++ib) {
    const bool ca = !ia->second.empty();
    const bool cb = !ib->second.empty();
    if (ca || cb) ++either;
    if (!(ca && cb)) continue;
    ++c.joint;
    std::set<ArticleId> items_a;
    for (const auto& r : ia->second) items_a.insert(r.article);
    std::set<ArticleId> counted;
    for (const auto& r : ib->second) {
      if (items_a.count(r.article) && counted.insert(r.article).second) ++c.overlap_items;
    }
  }
  c.union_coverage = c.universe == 0 ? 0.0
                                     : static_cast<double>(either) / static_cast<double>(c.universe);
  return c;
}

const char* to_string(DiversityWinner w) noexcept {
  switch (w) {
    case DiversityWinner::A: return "a";
    case DiversityWinner::B: return "b";
    case DiversityWinner::Tie: return "tie";
    case DiversityWinner::ZeroBoth: return "zero-both";
    case DiversityWinner::Incomparable: return "incomparable";
  }
  return "incomparable";
}

std::optional<double> mean_seed_similarity(std::string_view seed, const RecommendationList& recs,
                                           const Corpus& corpus, const JournalVectorStore& store) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& r : recs) {
    try {
      sum += seed_to_recommendation_similarity(seed, r.article, corpus, store);
      ++n;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoText && e.code() != ErrorCode::NotFound) throw;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

DiversityVerdict diversity_compare(std::string_view seed, const RecommendationList& recs_a,
                                   const RecommendationList& recs_b, const JournalVectorStore& store,
                                   const Corpus& corpus) {
  if (recs_a.empty() || recs_b.empty()) {
    throw Error(ErrorCode::InvalidArgument, "diversity comparison needs two non-empty lists");
  }
  DiversityVerdict v;
  v.mean_a = mean_seed_similarity(seed, recs_a, corpus, store);
  v.mean_b = mean_seed_similarity(seed, recs_b, corpus, store);
  if (!v.mean_a || !v.mean_b) {
    v.winner = DiversityWinner::Incomparable;
    return v;
  }

  const Article* s = corpus.find(seed);
  auto same_journal = [&](const RecommendationList& recs) {
    return std::all_of(recs.begin(), recs.end(), [&](const Recommendation& r) {
      const Article* a = corpus.find(r.article);
      return a != nullptr && s != nullptr && a->journal == s->journal;
    });
  };
  if (same_journal(recs_a) && same_journal(recs_b)) {
    v.winner = DiversityWinner::ZeroBoth;
  } else if (std::abs(*v.mean_a - *v.mean_b) <= kDiversityTieTolerance) {
    v.winner = DiversityWinner::Tie;
  } else {
    v.winner = *v.mean_a < *v.mean_b ? DiversityWinner::A : DiversityWinner::B;
  }
  return v;
}

ComparisonReport aggregate(std::span<const PerSeedRow> rows) {
  ComparisonReport r;
  r.seeds_total = rows.size();
  double sum_a = 0.0, sum_b = 0.0;
  std::size_t count_a = 0, count_b = 0, either = 0;
  for (const auto& row : rows) {
    r.covered_a += row.covered_a;
    r.covered_b += row.covered_b;
    r.recs_a_total += row.n_a;
    r.recs_b_total += row.n_b;
    r.overlap_items += row.overlap;
    if (row.covered_a || row.covered_b) ++either;
    if (row.covered_a && row.covered_b) ++r.joint_seeds;
    if (row.mean_sim_a) {
      sum_a += *row.mean_sim_a;
      ++count_a;
    }
    if (row.mean_sim_b) {
      sum_b += *row.mean_sim_b;
      ++count_b;
    }
    if (row.winner) {
      switch (*row.winner) {
        case DiversityWinner::A: ++r.diversity_wins_a; break;
        case DiversityWinner::B: ++r.diversity_wins_b; break;
        case DiversityWinner::ZeroBoth:
          ++r.zero_diversity_both;
          ++r.diversity_ties;
          break;
        case DiversityWinner::Tie: ++r.diversity_ties; break;
        case DiversityWinner::Incomparable: ++r.diversity_incomparable; break;
      }
    }
  }
  const auto total = static_cast<double>(r.seeds_total);
  if (r.seeds_total > 0) {
    r.coverage_a = static_cast<double>(r.covered_a) / total;
    r.coverage_b = static_cast<double>(r.covered_b) / total;
    r.union_coverage = static_cast<double>(either) / total;
  }
  if (either > 0) r.joint_over_union = static_cast<double>(r.joint_seeds) / static_cast<double>(either);
  if (r.covered_a + r.covered_b > 0) {
    r.joint_over_sum =
        static_cast<double>(r.joint_seeds) / static_cast<double>(r.covered_a + r.covered_b);
  }
  if (count_a > 0) r.mean_seed_similarity_a = sum_a / static_cast<double>(count_a);
  if (count_b > 0) r.mean_seed_similarity_b = sum_b / static_cast<double>(count_b);
  return r;
}

ComparisonRun run_comparison(const Engine& engine_a, const Engine& engine_b, const Corpus& corpus,
                             std::span<const ArticleId> seeds, const JournalVectorStore& store,
                             const ComparisonConfig& config) {
  // Keyed by seed: duplicate seeds collapse and rows come out ascending.
  const SeedOutcomes outcomes_a = run_engine(engine_a, seeds);
  const SeedOutcomes outcomes_b = run_engine(engine_b, seeds);

  ComparisonRun run;
  run.config = config;
  auto ib = outcomes_b.begin();
  for (auto ia = outcomes_a.begin(); ia != outcomes_a.end(); ++ia, ++ib) {
    const auto& seed = ia->first;
    const auto& recs_a = ia->second;
    const auto& recs_b = ib->second;

    PerSeedRow row;
    row.seed = seed;
    row.covered_a = !recs_a.empty();
    row.covered_b = !recs_b.empty();
    row.n_a = recs_a.size();
    row.n_b = recs_b.size();
    if (row.covered_a) row.mean_sim_a = mean_seed_similarity(seed, recs_a, corpus, store);
    if (row.covered_b) row.mean_sim_b = mean_seed_similarity(seed, recs_b, corpus, store);
    if (row.covered_a && row.covered_b) {
      row.winner = diversity_compare(seed, recs_a, recs_b, store, corpus).winner;
      SeedOutcomes one_a{{seed, recs_a}}, one_b{{seed, recs_b}};
      row.overlap = complementarity(one_a, one_b).overlap_items;
    }
    run.rows.push_back(std::move(row));
  }
  run.report = aggregate(run.rows);
  return run;
}

void write_report_json(std::ostream& out, const ComparisonRun& run) {
  const auto& r = run.report;
  const auto& c = run.config;
  nlohmann::ordered_json j;
  j["engine_a"] = c.engine_a;
  j["engine_b"] = c.engine_b;
  j["seeds_total"] = r.seeds_total;
  j["covered_a"] = r.covered_a;
  j["covered_b"] = r.covered_b;
  j["coverage_a"] = r.coverage_a;
  j["coverage_b"] = r.coverage_b;
  j["recs_a_total"] = r.recs_a_total;
  j["recs_b_total"] = r.recs_b_total;
  j["joint_seeds"] = r.joint_seeds;
  j["joint_over_union"] = r.joint_over_union;
  j["joint_over_sum"] = r.joint_over_sum;
  j["union_coverage"] = r.union_coverage;
  j["overlap_items"] = r.overlap_items;
  j["diversity_wins_a"] = r.diversity_wins_a;
  j["diversity_wins_b"] = r.diversity_wins_b;
  j["diversity_ties"] = r.diversity_ties;
  j["zero_diversity_both"] = r.zero_diversity_both;
  j["diversity_incomparable"] = r.diversity_incomparable;
  j["mean_seed_similarity_a"] = optional_json(r.mean_seed_similarity_a);
  j["mean_seed_similarity_b"] = optional_json(r.mean_seed_similarity_b);
  j["config"] = {{"n", c.n},
                 {"k", c.k},
                 {"min_cooccurrence", c.min_cooccurrence},
                 {"window", c.window},
                 {"d", c.map.dimension},
                 {"s", c.map.seed_entries},
                 {"rng_seed", c.map.rng_seed}};
  out << j.dump(2) << '\n';
}

void write_per_seed_csv(std::ostream& out, std::span<const PerSeedRow> rows) {
  out << "seed,covered_a,covered_b,n_a,n_b,mean_sim_a,mean_sim_b,winner,overlap\n";
  for (const auto& r : rows) {
    out << csv_escape(r.seed) << ',' << int{r.covered_a} << ',' << int{r.covered_b} << ','
        << r.n_a << ',' << r.n_b << ',' << (r.mean_sim_a ? format_double(*r.mean_sim_a) : "")
        << ',' << (r.mean_sim_b ? format_double(*r.mean_sim_b) : "") << ','
        << (r.winner ? to_string(*r.winner) : "") << ',' << r.overlap << '\n';
  }
}

std::vector<PerSeedRow> read_per_seed_csv(std::istream& in) {
  std::vector<PerSeedRow> rows;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "empty per-seed CSV");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw Error(ErrorCode::Parse, "per-seed row needs 9 fields");
    PerSeedRow r;
    r.seed = f[0];
    r.covered_a = f[1] == "1";
    r.covered_b = f[2] == "1";
    r.n_a = std::stoull(f[3]);
    r.n_b = std::stoull(f[4]);
    r.mean_sim_a = parse_optional_double(f[5]);
    r.mean_sim_b = parse_optional_double(f[6]);
    r.winner = parse_winner(f[7]);
    r.overlap = std::stoull(f[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_comparison_files(const std::filesystem::path& out_dir, const ComparisonRun& run) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + out_dir.string() + ": " + ec.message());
  {
    std::ofstream out(out_dir / "report.json", std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write report.json");
    write_report_json(out, run);
  }
  std::ofstream out(out_dir / "per_seed.csv", std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write per_seed.csv");
  write_per_seed_csv(out, run.rows);
}

std::string topn_to_json(const TopNResult& result, const LeaveOneOutOptions& options) {
  nlohmann::ordered_json j;
  j["seeds_tested"] = result.seeds_tested;
  j["skipped"] = result.skipped;
  nlohmann::ordered_json hits, rates;
  for (const auto& [cutoff, n] : result.hits_at) {
    hits[std::to_string(cutoff)] = n;
    rates[std::to_string(cutoff)] =
        result.seeds_tested == 0 ? 0.0
                                 : static_cast<double>(n) / static_cast<double>(result.seeds_tested);
  }
  j["hits_at"] = hits;
  j["hit_rate_at"] = rates;
  j["config"] = {{"k", options.k}, {"n_max", options.n_max}, {"rotate_all", options.rotate_all}};
  return j.dump(2);
}

}  // namespace scholarrec
