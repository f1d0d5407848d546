// Copyright 2026 The gazeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Objective scoring of responses against annotated target objects.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gazeq/error.hpp"
#include "gazeq/prompt.hpp"
#include "gazeq/session.hpp"
#include "gazeq/util.hpp"

namespace gazeq {

enum class QueryCategory { Explicit, Ambiguous, Unrelated };

constexpr std::string_view to_string(QueryCategory c) {
  switch (c) {
    case QueryCategory::Explicit: return "Explicit";
    case QueryCategory::Ambiguous: return "Ambiguous";
    case QueryCategory::Unrelated: return "Unrelated";
  }
  return "Unrelated";
}

/// Object names known to the evaluator, with synonym folding. Each synonym
/// group folds onto the member that appears in the truth annotations (the
/// lexicographically first such member), else onto its smallest member.
class Vocabulary {
 public:
  Vocabulary() = default;

  explicit Vocabulary(const GroundTruth& truth) {
    std::set<std::string> used;
    for (const auto& [q, names] : truth.entries)
      for (const auto& n : names) used.insert(to_lower(n));
    for (const auto& n : used) add_surface(n, n);
    for (const auto& group : truth.synonym_groups) {
      std::vector<std::string> members;
      for (const auto& m : group) members.push_back(to_lower(trim(m)));
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      if (members.empty()) continue;
      std::string canon = members.front();
      for (const auto& m : members)
        if (used.count(m)) {
          canon = m;
          break;
        }
      for (const auto& m : members) add_surface(m, canon);
    }
  }

  std::string canonical(const std::string& name) const {
    auto it = canonical_.find(to_lower(trim(name)));
    return it == canonical_.end() ? to_lower(trim(name)) : it->second;
  }

  std::set<std::string> canonical(const std::set<std::string>& names) const {
    std::set<std::string> out;
    for (const auto& n : names) out.insert(canonical(n));
    return out;
  }

  /// Canonical names with a surface form occurring in `text` as whole tokens.
  std::set<std::string> find_in(std::string_view text) const {
    auto tokens = tokenize_words(to_lower(text));
    std::set<std::string> out;
    for (const auto& [surface, phrase] : phrases_)
      if (contains_phrase(tokens, phrase)) out.insert(canonical_.at(surface));
    return out;
  }

  /// True when `name` (or any synonym of it) occurs in `text`.
  bool mentions(std::string_view text, const std::string& name) const { return find_in(text).count(canonical(name)) != 0; }

 private:
  void add_surface(const std::string& surface, const std::string& canon) {
    auto phrase = tokenize_words(surface);
    if (phrase.empty()) return;
    canonical_[surface] = canon;
    phrases_[surface] = std::move(phrase);
  }

  static bool contains_phrase(const std::vector<std::string>& tokens, const std::vector<std::string>& phrase) {
    if (phrase.size() > tokens.size()) return false;
    for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i)
      if (std::equal(phrase.begin(), phrase.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) return true;
    return false;
  }

  std::map<std::string, std::string> canonical_;
  std::map<std::string, std::vector<std::string>> phrases_;
};

enum MatchScope : unsigned { kMatchThought = 1, kMatchAnswer = 2, kMatchQuery = 4 };
inline constexpr unsigned kDefaultMatchScope = kMatchAnswer | kMatchQuery;

inline std::set<std::string> extract_predicted_objects(const AssistantResponse& response, const Vocabulary& vocabulary,
                                                       unsigned scope = kDefaultMatchScope) {
  std::set<std::string> out;
  auto add = [&](const std::string& text) {
    auto found = vocabulary.find_in(text);
    out.insert(found.begin(), found.end());
  };
  if (scope & kMatchThought) add(response.thought);
  if (scope & kMatchAnswer) add(response.answer);
  if (scope & kMatchQuery) add(response.query);
  return out;
}

inline QueryCategory classify_query(std::string_view query_text, const std::set<std::string>& truth_set,
                                    const Vocabulary& vocabulary) {
  if (truth_set.empty()) return QueryCategory::Unrelated;
  auto found = vocabulary.find_in(query_text);
  for (const auto& name : truth_set)
    if (!found.count(vocabulary.canonical(name))) return QueryCategory::Ambiguous;
  return QueryCategory::Explicit;
}

inline QueryCategory classify_query(const QuerySpan& query, const std::set<std::string>& truth_set,
                                    const Vocabulary& vocabulary) {
  return classify_query(query.text(), truth_set, vocabulary);
}

struct QueryScore {
  double recall = 0;
  std::optional<double> precision;
};

inline QueryScore score_query(const std::set<std::string>& truth, const std::set<std::string>& predicted) {
  if (truth.empty()) fail(ErrorKind::EmptyTruth, "truth set is empty");
  std::size_t hit = 0;
  for (const auto& p : predicted) hit += truth.count(p);
  QueryScore s;
  s.recall = static_cast<double>(hit) / static_cast<double>(truth.size());
  if (!predicted.empty()) s.precision = static_cast<double>(hit) / static_cast<double>(predicted.size());
  return s;
}

struct EvalRecord {
  std::string query_id;
  std::string variant;
  std::set<std::string> truth_set;
  std::set<std::string> predicted_set;
  double recall = 0;
  std::optional<double> precision;
  QueryCategory category = QueryCategory::Unrelated;
};

/// Categorizes and scores one response. Unrelated queries get no score.
inline EvalRecord evaluate_response(const std::string& query_id, const std::string& variant, std::string_view query_text,
                                    const AssistantResponse& response, const std::set<std::string>& truth,
                                    const Vocabulary& vocabulary, unsigned scope = kDefaultMatchScope) {
  EvalRecord r;
  r.query_id = query_id;
  r.variant = variant;
  r.truth_set = vocabulary.canonical(truth);
  r.predicted_set = extract_predicted_objects(response, vocabulary, scope);
  r.category = classify_query(query_text, r.truth_set, vocabulary);
  if (r.category != QueryCategory::Unrelated) {
    auto s = score_query(r.truth_set, r.predicted_set);
    r.recall = s.recall;
    r.precision = s.precision;
  }
  return r;
}

enum class ReportCategory { All, Explicit, Ambiguous };

constexpr std::string_view to_string(ReportCategory c) {
  switch (c) {
    case ReportCategory::All: return "All";
    case ReportCategory::Explicit: return "Explicit";
    case ReportCategory::Ambiguous: return "Ambiguous";
  }
  return "All";
}

inline constexpr std::array<ReportCategory, 3> kReportCategories = {ReportCategory::All, ReportCategory::Explicit,
                                                                    ReportCategory::Ambiguous};

struct AggregateRow {
  std::optional<double> mean_recall;     // none when count == 0
  std::optional<double> mean_precision;  // none when no record has a defined precision
  std::size_t count = 0;
  std::size_t undefined_precision = 0;
  double recall_sum = 0;
  double precision_sum = 0;
};

struct AggregateReport {
  std::vector<std::string> variants;  // report column order
  std::map<std::string, std::map<ReportCategory, AggregateRow>> rows;
  std::size_t unrelated = 0;

  const AggregateRow& at(const std::string& variant, ReportCategory c) const { return rows.at(variant).at(c); }
};

/// Canonical variant order first, then any others alphabetically.
inline std::vector<std::string> order_variants(const std::set<std::string>& present) {
  static const std::vector<std::string> canonical = {"VOILA-G", "VOILA-S", "VOILA-T", "VOILA", "VOILA-center", "VOILA-ext"};
  std::vector<std::string> out;
  for (const auto& v : canonical)
    if (present.count(v)) out.push_back(v);
  for (const auto& v : present)
    if (std::find(canonical.begin(), canonical.end(), v) == canonical.end()) out.push_back(v);
  return out;
}

inline AggregateReport aggregate(std::span<const EvalRecord> records) {
  AggregateReport rep;
  std::set<std::string> variants;
  for (const auto& r : records) {
    variants.insert(r.variant);
    auto& by_cat = rep.rows[r.variant];
    for (auto c : kReportCategories) by_cat[c];
    if (r.category == QueryCategory::Unrelated) {
      ++rep.unrelated;
      continue;
    }
    ReportCategory own = r.category == QueryCategory::Explicit ? ReportCategory::Explicit : ReportCategory::Ambiguous;
    for (auto c : {ReportCategory::All, own}) {
      auto& row = by_cat[c];
      ++row.count;
      row.recall_sum += r.recall;
      if (r.precision) row.precision_sum += *r.precision;
      else ++row.undefined_precision;
    }
  }
  for (auto& [v, by_cat] : rep.rows)
    for (auto& [c, row] : by_cat) {
      if (row.count) row.mean_recall = row.recall_sum / static_cast<double>(row.count);
      std::size_t defined = row.count - row.undefined_precision;
      if (defined) row.mean_precision = row.precision_sum / static_cast<double>(defined);
    }
  rep.variants = order_variants(variants);
  return rep;
}

inline json to_json(const EvalRecord& r) {
  return {{"query_id", r.query_id},
          {"variant", r.variant},
          {"category", std::string(to_string(r.category))},
          {"truth", r.truth_set},
          {"predicted", r.predicted_set},
          {"recall", r.category == QueryCategory::Unrelated ? json(nullptr) : json(r.recall)},
          {"precision", r.precision ? json(*r.precision) : json(nullptr)}};
}

inline json to_json(const AggregateReport& rep, std::span<const EvalRecord> records = {}) {
  json variants = json::object();
  for (const auto& v : rep.variants) {
    json cats = json::object();
    for (auto c : kReportCategories) {
      const auto& row = rep.at(v, c);
      cats[std::string(to_string(c))] = {{"mean_recall", row.mean_recall ? json(*row.mean_recall) : json(nullptr)},
                                         {"mean_precision", row.mean_precision ? json(*row.mean_precision) : json(nullptr)},
                                         {"count", row.count},
                                         {"undefined_precision", row.undefined_precision}};
    }
    variants[v] = cats;
  }
  json j = {{"variant_order", rep.variants}, {"variants", variants}, {"unrelated", rep.unrelated}};
  if (!records.empty()) {
    json rs = json::array();
    for (const auto& r : records) rs.push_back(to_json(r));
    j["records"] = rs;
  }
  return j;
}

/// Rows are metric x category, columns are variants. Means are printed with
/// six decimals; an undefined mean is an empty cell.
inline std::string report_to_csv(const AggregateReport& rep) {
  std::string out = "metric,category";
  for (const auto& v : rep.variants) out += "," + v;
  out += "\n";
  auto cell = [](const std::optional<double>& v) { return v ? format_fixed(*v, 6) : std::string(); };
  for (const char* metric : {"recall", "precision"}) {
    for (auto c : kReportCategories) {
      out += std::string(metric) + "," + std::string(to_string(c));
      for (const auto& v : rep.variants) {
        const auto& row = rep.at(v, c);
        out += "," + cell(metric[0] == 'r' ? row.mean_recall : row.mean_precision);
      }
      out += "\n";
    }
  }
  for (const char* metric : {"count", "undefined_precision"}) {
    for (auto c : kReportCategories) {
      out += std::string(metric) + "," + std::string(to_string(c));
      for (const auto& v : rep.variants) {
        const auto& row = rep.at(v, c);
        out += "," + std::to_string(metric[0] == 'c' ? row.count : row.undefined_precision);
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace gazeq
