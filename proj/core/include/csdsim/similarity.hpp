#pragma once

#include "csdsim/domain.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace csdsim::similarity {

struct SimilarityConfig {
    double log_base = 10.0;      // base of both logarithms in the TF-IDF weight
    double denom_offset = 12.0;  // additive constant in the denominator
    double tf_scale = 12.0;      // multiplier applied to TF inside the log
    bool binary_tech_match = false; // Jaccard overlap by default
    bool include_temporal = true;   // keep reg_start/sub_deadline components
};

/// Lowercased alphanumeric tokens with stop words removed. Deterministic;
/// empty text yields an empty list.
std::vector<std::string> tokenize(const std::string& text,
                                  const std::set<std::string>& stop_words);

/// The bundled English stop-word list.
const std::set<std::string>& default_stop_words();

/// Parses a stop-word file: one word per line, '#' comments allowed.
std::set<std::string> load_stop_words(const std::string& path);

/// Term statistics of one requirement document within a corpus.
struct RequirementVector {
    std::string task_id;
    std::map<std::string, double> term_weights; // term -> TF-IDF weight
    std::map<std::string, int> raw_counts;      // Z per term
    int max_count = 0;                          // W
    double weight_sum = 0.0;                    // sum of term weights
};

/// Corpus of tokenized requirement documents.
class Corpus {
public:
    /// Builds from (task_id, requirement text) pairs.
    static Corpus build(const std::vector<std::pair<std::string, std::string>>& docs,
                        const std::set<std::string>& stop_words,
                        const SimilarityConfig& cfg = {});

    int size() const { return static_cast<int>(docs_.size()); } // M
    /// Documents containing the term (Y). 0 if absent.
    int doc_frequency(const std::string& term) const;
    const RequirementVector* find(const std::string& task_id) const;
    const std::vector<RequirementVector>& documents() const { return docs_; }

    /// IDF(v) = M / Y. Throws DomainError when the term is absent (Y = 0).
    double idf(const std::string& term) const;
    /// TF(v, i) = Z / W for the document of `task_id`. Throws DomainError on
    /// an unknown task or an empty document; absent term yields 0.
    double tf(const std::string& term, const std::string& task_id) const;
    /// log(IDF) / (offset + log(scale * TF)), logs in the configured base.
    /// TF = 0 is guarded to weight 0; IDF = 1 yields 0.
    double tfidf_weight(const std::string& term, const std::string& task_id) const;

    const SimilarityConfig& config() const { return cfg_; }

private:
    std::vector<RequirementVector> docs_;
    std::map<std::string, int> doc_freq_;
    std::map<std::string, std::size_t> index_;
    SimilarityConfig cfg_;
};

/// Numeric task-distance vector. Fixed component order:
/// [award, reg_start, sub_deadline, type slot, tech slot, requirement weight].
/// The type/tech slots are placeholders resolved pairwise at comparison time;
/// the numeric components are min-max normalized corpus-wide.
struct DistanceVector {
    std::string task_id;
    double award = 0.0;
    double reg_start = 0.0;
    double sub_deadline = 0.0;
    double requirement_weight = 0.0;
    std::string task_type;
    std::set<std::string> technologies;
    bool temporal_included = true;
};

/// Corpus-wide min/max scales per numeric component.
struct Normalizer {
    double award_min = 0.0, award_max = 0.0;
    double reg_start_min = 0.0, reg_start_max = 0.0;
    double sub_deadline_min = 0.0, sub_deadline_max = 0.0;
    double req_weight_min = 0.0, req_weight_max = 0.0;

    static Normalizer from_tasks(const std::vector<Task>& tasks, const Corpus& corpus);
};

/// Builds the distance vector of a task over its repost group (the task plus
/// all reposts): award and temporal components take the maximum across the
/// group; the requirement weight is the summed TF-IDF weight of the task's
/// document. Components are min-max normalized to [0,1]; a degenerate
/// min = max component normalizes to 0. Throws DomainError on an empty group.
DistanceVector distance_vector(const Task& task,
                               const std::vector<Task>& repost_group,
                               const Normalizer& norm,
                               const Corpus& corpus);

/// Cosine similarity of two distance vectors with the pairwise match slots
/// resolved: type slot is 1 on equal types for both vectors; tech slot is the
/// Jaccard overlap of the technology sets (binary mode: 1 iff equal sets).
/// A zero-norm vector yields similarity 0. Result lies in [0,1].
double task_similarity(const DistanceVector& a, const DistanceVector& b,
                       const SimilarityConfig& cfg = {});

/// Mean similarity of the target against a pool of open tasks; empty pool -> 0.
double pool_similarity(const std::vector<DistanceVector>& open_tasks,
                       const DistanceVector& target,
                       const SimilarityConfig& cfg = {});

} // namespace csdsim::similarity
