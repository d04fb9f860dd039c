#include "rasaeco/stats.hpp"

#include <json.hpp>

namespace rasaeco {

WordBucket word_bucket(int words) {
    if (words < 500) return WordBucket::below_500;
    if (words <= 1000) return WordBucket::from_500_to_1000;
    return WordBucket::above_1000;
}

double CorpusStats::ifc_match_ratio() const {
    return definitions > 0 ? static_cast<double>(ifc_matched) / definitions : 0.0;
}

CorpusStats corpus_stats(const Corpus& corpus, const OntologyGraph& graph, const Vocabulary& vocabulary) {
    CorpusStats stats;
    const auto degrees = degree_stats(graph);
    for (const auto& [id, doc] : corpus.documents) {
        ScenarioStats s;
        s.identifier = id;
        s.word_count = word_count(doc);
        for (const auto& m : doc.markings) {
            ++(m.dimension == Axis::phase ? s.phase_markings : s.level_markings);
        }
        s.definitions = static_cast<int>(doc.definitions.size());
        for (const auto& [name, def] : doc.definitions) {
            for (const auto& mention : def.ifc_tokens) {
                if (vocabulary.count(mention.token) > 0) {
                    ++s.ifc_matched;
                    break;
                }
            }
        }
        const auto degree = degrees.at(id);
        s.in_degree = degree.in_degree;
        s.out_degree = degree.out_degree;

        switch (word_bucket(s.word_count)) {
            case WordBucket::below_500: ++stats.buckets.below_500; break;
            case WordBucket::from_500_to_1000: ++stats.buckets.from_500_to_1000; break;
            case WordBucket::above_1000: ++stats.buckets.above_1000; break;
        }
        ++stats.phase_marking_histogram[s.phase_markings];
        ++stats.level_marking_histogram[s.level_markings];
        ++stats.in_degree_histogram[s.in_degree];
        ++stats.out_degree_histogram[s.out_degree];
        stats.definitions += s.definitions;
        stats.ifc_matched += s.ifc_matched;
        stats.scenarios.push_back(std::move(s));
    }
    stats.edges = static_cast<int>(graph.edges.size());
    return stats;
}

namespace {

nlohmann::ordered_json histogram_json(const Histogram& h) {
    auto out = nlohmann::ordered_json::object();
    for (const auto& [value, count] : h) out[std::to_string(value)] = count;
    return out;
}

}  // namespace

std::string emit_stats_json(const CorpusStats& stats) {
    nlohmann::ordered_json root;
    root["scenarios"] = nlohmann::ordered_json::array();
    for (const auto& s : stats.scenarios) {
        nlohmann::ordered_json row;
        row["identifier"] = s.identifier;
        row["word_count"] = s.word_count;
        row["phase_markings"] = s.phase_markings;
        row["level_markings"] = s.level_markings;
        row["definitions"] = s.definitions;
        row["ifc_matched"] = s.ifc_matched;
        row["in_degree"] = s.in_degree;
        row["out_degree"] = s.out_degree;
        root["scenarios"].push_back(std::move(row));
    }
    auto& totals = root["totals"];
    totals["scenario_count"] = stats.scenarios.size();
    totals["word_buckets"] = {{"lt_500", stats.buckets.below_500},
                              {"500_to_1000", stats.buckets.from_500_to_1000},
                              {"gt_1000", stats.buckets.above_1000}};
    totals["phase_marking_histogram"] = histogram_json(stats.phase_marking_histogram);
    totals["level_marking_histogram"] = histogram_json(stats.level_marking_histogram);
    totals["in_degree_histogram"] = histogram_json(stats.in_degree_histogram);
    totals["out_degree_histogram"] = histogram_json(stats.out_degree_histogram);
    totals["definitions"] = stats.definitions;
    totals["ifc_matched"] = stats.ifc_matched;
    totals["ifc_match_ratio"] = stats.ifc_match_ratio();
    totals["edges"] = stats.edges;
    return root.dump(2) + "\n";
}

}  // namespace rasaeco
