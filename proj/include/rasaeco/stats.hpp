#pragma once

#include <map>
#include <string>
#include <vector>

#include "rasaeco/document.hpp"
#include "rasaeco/ontology.hpp"

namespace rasaeco {

struct ScenarioStats {
    std::string identifier;
    int word_count = 0;
    int phase_markings = 0;
    int level_markings = 0;
    int definitions = 0;
    int ifc_matched = 0;
    int in_degree = 0;
    int out_degree = 0;

    bool operator==(const ScenarioStats&) const = default;
};

/// Word-count buckets: [0, 500), [500, 1000] and (1000, inf).
struct WordBuckets {
    int below_500 = 0;
    int from_500_to_1000 = 0;
    int above_1000 = 0;

    bool operator==(const WordBuckets&) const = default;
};

enum class WordBucket { below_500, from_500_to_1000, above_1000 };

WordBucket word_bucket(int words);

using Histogram = std::map<int, int>;  // value -> number of scenarios

struct CorpusStats {
    std::vector<ScenarioStats> scenarios;  // sorted by identifier
    WordBuckets buckets;
    Histogram phase_marking_histogram;
    Histogram level_marking_histogram;
    Histogram in_degree_histogram;
    Histogram out_degree_histogram;
    int definitions = 0;
    int ifc_matched = 0;
    int edges = 0;

    // ifc_matched / definitions, or 0 without definitions.
    double ifc_match_ratio() const;
};

/// A definition is IFC-matched when at least one of its IFC tokens is in
/// `vocabulary`.
CorpusStats corpus_stats(const Corpus& corpus, const OntologyGraph& graph,
                         const Vocabulary& vocabulary = default_ifc_vocabulary());

std::string emit_stats_json(const CorpusStats& stats);

}  // namespace rasaeco
