#include "metastack/views.hpp"

#include "metastack/errors.hpp"
#include "metastack/ranking.hpp"
#include "metastack/serialization.hpp"

#include <sstream>

namespace metastack {

using nlohmann::json;

namespace {

const MetamodelResult& require_result(const ExperimentRecord& record, const std::string& id) {
    const auto* r = record.find_result(id);
    if (r == nullptr)
        throw UnknownCandidate(id);
    return *r;
}

json failures_json(const ExperimentRecord& record) {
    json out = json::array();
    for (const auto& f : record.failures)
        out.push_back({{"candidate_id", f.candidate_id}, {"message", f.message}});
    return out;
}

} // namespace

std::string format_number(double value) {
    return json(value).dump();
}

json ranking_view(const ExperimentRecord& record, const MetricWeights& weights) {
    const auto ranked = rank_candidates(record.results, weights);
    json rows = json::array();
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& r = record.results[ranked[i].result_index];
        rows.push_back({{"rank", i + 1},
                        {"candidate_id", ranked[i].candidate_id},
                        {"algorithm", std::string(to_string(r.candidate.algorithm))},
                        {"hyperparameters", to_json(r.candidate.hyperparameters)},
                        {"score", ranked[i].score},
                        {"metrics", to_json(r.metrics)}});
    }
    return {{"experiment_id", record.experiment_id},
            {"weights", to_json(weights.normalized())},
            {"ranking", std::move(rows)},
            {"failures", failures_json(record)}};
}

json instances_view(const ExperimentRecord& record, bool problematic_only,
                    const ProblematicCriterion& criterion) {
    criterion.validate();
    const auto problematic = find_problematic(record.results, record.instance_ids, criterion);
    std::vector<bool> flagged(record.instance_ids.size(), false);
    for (const auto& s : problematic.instances)
        flagged[s.index] = true;

    std::vector<InstanceStatistics> rows;
    if (problematic_only)
        rows = problematic.instances;
    else
        rows = instance_statistics(record.results, record.instance_ids);

    json candidates = json::array();
    for (const auto& r : record.results)
        candidates.push_back(r.candidate.candidate_id);

    json instances = json::array();
    for (const auto& s : rows) {
        json per_candidate = json::array();
        for (const auto& r : record.results) {
            const auto p = r.oof_probabilities.row(s.index);
            per_candidate.push_back({{"candidate_id", r.candidate.candidate_id},
                                     {"predicted", r.predicted_labels[s.index]},
                                     {"correct", static_cast<bool>(r.correct[s.index])},
                                     {"probabilities", std::vector<double>(p.begin(), p.end())}});
        }
        instances.push_back({{"index", s.index},
                             {"instance_id", s.instance_id},
                             {"label", record.labels[s.index]},
                             {"fraction_wrong", s.fraction_wrong},
                             {"mean_confidence", s.mean_confidence},
                             {"problematic", static_cast<bool>(flagged[s.index])},
                             {"per_candidate", std::move(per_candidate)}});
    }
    return {{"experiment_id", record.experiment_id},
            {"criterion",
             {{"min_fraction_wrong", criterion.min_fraction_wrong},
              {"confidence_ceiling", criterion.confidence_ceiling}}},
            {"problematic_only", problematic_only},
            {"class_names", record.dataset_summary.class_names},
            {"candidates", std::move(candidates)},
            {"instances", std::move(instances)}};
}

json comparison_view(const ExperimentRecord& record, const std::string& candidate_a,
                     const std::string& candidate_b) {
    const auto& a = require_result(record, candidate_a);
    const auto& b = require_result(record, candidate_b);
    json body = to_json(compare_pair(a, b, record.labels, record.instance_ids));
    body["experiment_id"] = record.experiment_id;
    return body;
}

json listing_view(const ExperimentListing& listing) {
    json out = json::array();
    for (const auto& e : listing.experiments)
        out.push_back({{"experiment_id", e.experiment_id},
                       {"created_at", e.created_at},
                       {"dataset_summary", to_json(e.dataset_summary)}});
    return out;
}

json error_view(int status, const std::string& code, const std::string& message) {
    return {{"status", status}, {"code", code}, {"message", message}};
}

std::string render(const json& document) {
    return document.dump(2) + "\n";
}

std::string ranking_csv(const ExperimentRecord& record, const MetricWeights& weights) {
    const auto ranked = rank_candidates(record.results, weights);
    std::ostringstream out;
    out << "rank,candidate_id,algorithm,score";
    for (Metric m : all_metrics)
        out << ',' << to_string(m);
    out << '\n';
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& r = record.results[ranked[i].result_index];
        out << i + 1 << ',' << ranked[i].candidate_id << ',' << to_string(r.candidate.algorithm) << ','
            << format_number(ranked[i].score);
        for (Metric m : all_metrics) {
            out << ',';
            if (const auto v = r.metrics.get(m))
                out << format_number(*v);
        }
        out << '\n';
    }
    return out.str();
}

std::string comparison_csv(const ExperimentRecord& record, const std::string& candidate_a,
                           const std::string& candidate_b) {
    const auto pc = compare_pair(require_result(record, candidate_a), require_result(record, candidate_b),
                                 record.labels, record.instance_ids);
    std::ostringstream out;
    out << "instance_id,label,pred_a,pred_b,maxproba_a,maxproba_b,delta\n";
    for (const auto& d : pc.per_instance) {
        std::string id = d.instance_id;
        if (id.find_first_of(",\"\n") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : id)
                quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
            id = quoted + "\"";
        }
        out << id << ',' << d.label << ',' << d.pred_a << ',' << d.pred_b << ','
            << format_number(d.maxproba_a) << ',' << format_number(d.maxproba_b) << ','
            << format_number(d.delta) << '\n';
    }
    return out.str();
}

} // namespace metastack
