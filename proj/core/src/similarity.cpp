#include "csdsim/similarity.hpp"

#include "csdsim/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

namespace csdsim::similarity {

std::vector<std::string> tokenize(const std::string& text,
                                  const std::set<std::string>& stop_words) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            if (!stop_words.count(cur))
                out.push_back(cur);
            cur.clear();
        }
    };
    for (unsigned char c : text) {
        if (std::isalnum(c))
            cur.push_back(static_cast<char>(std::tolower(c)));
        else
            flush();
    }
    flush();
    return out;
}

std::set<std::string> load_stop_words(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open stop-word file: " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        std::string w;
        for (unsigned char c : line)
            w.push_back(static_cast<char>(std::tolower(c)));
        words.insert(w);
    }
    return words;
}

namespace {

double log_in_base(double x, double base) {
    return std::log(x) / std::log(base);
}

} // namespace

Corpus Corpus::build(const std::vector<std::pair<std::string, std::string>>& docs,
                     const std::set<std::string>& stop_words,
                     const SimilarityConfig& cfg) {
    Corpus c;
    c.cfg_ = cfg;
    for (const auto& [id, text] : docs) {
        RequirementVector rv;
        rv.task_id = id;
        for (const auto& term : tokenize(text, stop_words))
            rv.raw_counts[term] += 1;
        for (const auto& [term, z] : rv.raw_counts)
            rv.max_count = std::max(rv.max_count, z);
        c.index_[id] = c.docs_.size();
        c.docs_.push_back(std::move(rv));
    }
    for (const auto& d : c.docs_)
        for (const auto& [term, z] : d.raw_counts)
            c.doc_freq_[term] += 1;
    // Second pass now that document frequencies are known.
    for (auto& d : c.docs_) {
        for (const auto& [term, z] : d.raw_counts) {
            double w = c.tfidf_weight(term, d.task_id);
            d.term_weights[term] = w;
            d.weight_sum += w;
        }
    }
    return c;
}

int Corpus::doc_frequency(const std::string& term) const {
    auto it = doc_freq_.find(term);
    return it == doc_freq_.end() ? 0 : it->second;
}

const RequirementVector* Corpus::find(const std::string& task_id) const {
    auto it = index_.find(task_id);
    return it == index_.end() ? nullptr : &docs_[it->second];
}

double Corpus::idf(const std::string& term) const {
    int y = doc_frequency(term);
    if (y == 0)
        throw DomainError("idf: term '" + term + "' absent from corpus");
    return static_cast<double>(size()) / static_cast<double>(y);
}

double Corpus::tf(const std::string& term, const std::string& task_id) const {
    const RequirementVector* d = find(task_id);
    if (d == nullptr)
        throw DomainError("tf: unknown document " + task_id);
    if (d->max_count == 0)
        throw DomainError("tf: empty document " + task_id);
    auto it = d->raw_counts.find(term);
    int z = it == d->raw_counts.end() ? 0 : it->second;
    return static_cast<double>(z) / static_cast<double>(d->max_count);
}

double Corpus::tfidf_weight(const std::string& term, const std::string& task_id) const {
    double tf_v = tf(term, task_id);
    if (tf_v == 0.0)
        return 0.0;
    double idf_v = idf(term);
    if (idf_v == 1.0)
        return 0.0;
    double num = log_in_base(idf_v, cfg_.log_base);
    double den = cfg_.denom_offset + log_in_base(cfg_.tf_scale * tf_v, cfg_.log_base);
    return num / den;
}

Normalizer Normalizer::from_tasks(const std::vector<Task>& tasks, const Corpus& corpus) {
    Normalizer n;
    bool first = true;
    for (const auto& t : tasks) {
        double w = 0.0;
        if (const RequirementVector* d = corpus.find(t.id))
            w = d->weight_sum;
        if (first) {
            n.award_min = n.award_max = t.award;
            n.reg_start_min = n.reg_start_max = t.reg_start;
            n.sub_deadline_min = n.sub_deadline_max = t.sub_deadline;
            n.req_weight_min = n.req_weight_max = w;
            first = false;
        } else {
            n.award_min = std::min(n.award_min, t.award);
            n.award_max = std::max(n.award_max, t.award);
            n.reg_start_min = std::min(n.reg_start_min, t.reg_start);
            n.reg_start_max = std::max(n.reg_start_max, t.reg_start);
            n.sub_deadline_min = std::min(n.sub_deadline_min, t.sub_deadline);
            n.sub_deadline_max = std::max(n.sub_deadline_max, t.sub_deadline);
            n.req_weight_min = std::min(n.req_weight_min, w);
            n.req_weight_max = std::max(n.req_weight_max, w);
        }
    }
    return n;
}

namespace {

double min_max(double v, double lo, double hi) {
    if (hi <= lo)
        return 0.0; // degenerate range
    return (v - lo) / (hi - lo);
}

} // namespace

DistanceVector distance_vector(const Task& task,
                               const std::vector<Task>& repost_group,
                               const Normalizer& norm,
                               const Corpus& corpus) {
    if (repost_group.empty())
        throw DomainError("distance_vector: empty repost group");
    double award = repost_group.front().award;
    double reg_start = repost_group.front().reg_start;
    double sub_deadline = repost_group.front().sub_deadline;
    for (const auto& t : repost_group) {
        award = std::max(award, t.award);
        reg_start = std::max(reg_start, t.reg_start);
        sub_deadline = std::max(sub_deadline, t.sub_deadline);
    }
    double w = 0.0;
    if (const RequirementVector* d = corpus.find(task.id))
        w = d->weight_sum;

    DistanceVector v;
    v.task_id = task.id;
    v.award = min_max(award, norm.award_min, norm.award_max);
    v.reg_start = min_max(reg_start, norm.reg_start_min, norm.reg_start_max);
    v.sub_deadline = min_max(sub_deadline, norm.sub_deadline_min, norm.sub_deadline_max);
    v.requirement_weight = min_max(w, norm.req_weight_min, norm.req_weight_max);
    v.task_type = task.task_type;
    v.technologies = task.technologies;
    v.temporal_included = corpus.config().include_temporal;
    return v;
}

namespace {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() && b.empty())
        return 0.0;
    std::size_t inter = 0;
    for (const auto& x : a)
        inter += b.count(x);
    std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

void resolve_components(const DistanceVector& v, double type_match, double tech_match,
                        bool temporal, std::vector<double>& out) {
    out.clear();
    out.push_back(v.award);
    if (temporal) {
        out.push_back(v.reg_start);
        out.push_back(v.sub_deadline);
    }
    out.push_back(type_match);
    out.push_back(tech_match);
    out.push_back(v.requirement_weight);
}

} // namespace

double task_similarity(const DistanceVector& a, const DistanceVector& b,
                       const SimilarityConfig& cfg) {
    double type_match = (a.task_type == b.task_type && !a.task_type.empty()) ? 1.0 : 0.0;
    double tech_match;
    if (cfg.binary_tech_match)
        tech_match = (a.technologies == b.technologies && !a.technologies.empty()) ? 1.0 : 0.0;
    else
        tech_match = jaccard(a.technologies, b.technologies);

    bool temporal = a.temporal_included && b.temporal_included && cfg.include_temporal;
    std::vector<double> va, vb;
    resolve_components(a, type_match, tech_match, temporal, va);
    resolve_components(b, type_match, tech_match, temporal, vb);

    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        dot += va[i] * vb[i];
        na += va[i] * va[i];
        nb += vb[i] * vb[i];
    }
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    double cosv = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::clamp(cosv, 0.0, 1.0);
}

double pool_similarity(const std::vector<DistanceVector>& open_tasks,
                       const DistanceVector& target,
                       const SimilarityConfig& cfg) {
    // Caller keeps the target itself out of the pool; an identical copy counts.
    if (open_tasks.empty())
        return 0.0;
    double sum = 0.0;
    for (const auto& t : open_tasks)
        sum += task_similarity(target, t, cfg);
    return sum / static_cast<double>(open_tasks.size());
}

} // namespace csdsim::similarity
