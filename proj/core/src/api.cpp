#include "metastack/api.hpp"

#include "metastack/errors.hpp"
#include "metastack/serialization.hpp"
#include "metastack/store.hpp"
#include "metastack/views.hpp"

#include <httplib.h>

#include <iostream>
#include <vector>

namespace metastack {

using nlohmann::json;

namespace {

ApiResponse json_response(int status, const json& body) {
    ApiResponse r;
    r.status = status;
    r.body = render(body);
    return r;
}

ApiResponse error_response(int status, const std::string& code, const std::string& message) {
    return json_response(status, error_view(status, code, message));
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos < path.size()) {
        const auto next = path.find('/', pos);
        const auto end = next == std::string::npos ? path.size() : next;
        if (end > pos)
            parts.push_back(path.substr(pos, end - pos));
        pos = end + 1;
    }
    return parts;
}

bool truthy(const std::string& v) {
    return v == "1" || v == "true" || v == "yes";
}

double parse_threshold(const std::map<std::string, std::string>& query, const char* key, double fallback) {
    const auto it = query.find(key);
    if (it == query.end() || it->second.empty())
        return fallback;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(it->second, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != it->second.size())
        throw std::invalid_argument(std::string("'") + key + "' must be a number");
    return v;
}

int status_for(const Error& e) {
    const auto& code = e.code();
    if (code == "not_found" || code == "unknown_candidate")
        return 404;
    if (code == "duplicate_experiment")
        return 409;
    if (code == "io_failure" || code == "schema_validation_error" || code == "model_training_failure")
        return 500;
    return 422;
}

} // namespace

ApiService::ApiService(ApiOptions options) : options_(std::move(options)) {}

std::mutex& ApiService::experiment_mutex(const std::string& experiment_id) {
    std::lock_guard lock(registry_mutex_);
    auto& slot = run_mutexes_[experiment_id];
    if (!slot)
        slot = std::make_unique<std::mutex>();
    return *slot;
}

ApiResponse ApiService::post_experiment(const ApiRequest& request) {
    json body;
    try {
        body = json::parse(request.body);
    } catch (const json::parse_error& e) {
        return error_response(400, "malformed_json", e.what());
    }
    const ExperimentConfig config = normalize_config(config_from_json(body));
    const std::string id = experiment_id(config);
    const auto it = request.query.find("overwrite");
    const bool overwrite = it != request.query.end() && truthy(it->second);

    std::lock_guard lock(experiment_mutex(id));
    RunOptions run;
    run.threads = options_.threads;
    run.store_root = options_.store_root;
    run.overwrite = overwrite;
    const ExperimentRecord record = run_experiment(config, run);

    json failures = json::array();
    for (const auto& f : record.failures)
        failures.push_back({{"candidate_id", f.candidate_id}, {"message", f.message}});
    return json_response(200, {{"experiment_id", record.experiment_id},
                               {"n_results", record.results.size()},
                               {"failures", std::move(failures)}});
}

ApiResponse ApiService::handle(const ApiRequest& request) {
    ApiResponse response;
    try {
        const auto parts = split_path(request.path);
        const auto& m = request.method;
        if (m == "OPTIONS") {
            response.status = 204;
            response.content_type.clear();
        } else if (parts.empty() || parts[0] != "experiments" || parts.size() > 3) {
            response = error_response(404, "not_found", "no such endpoint: " + request.path);
        } else if (parts.size() == 1) {
            if (m == "POST") {
                response = post_experiment(request);
            } else if (m == "GET") {
                const auto listing = list_experiments(options_.store_root);
                for (const auto& w : listing.warnings)
                    std::cerr << "warning: unreadable record " << w.file << ": " << w.message << '\n';
                response = json_response(200, listing_view(listing));
                response.headers["X-Store-Warnings"] = std::to_string(listing.warnings.size());
            } else {
                response = error_response(405, "method_not_allowed", m + " not allowed on /experiments");
            }
        } else if (parts.size() == 2) {
            if (m == "GET") {
                response = json_response(200, to_json(load_experiment(options_.store_root, parts[1])));
            } else if (m == "DELETE") {
                delete_experiment(options_.store_root, parts[1]);
                response = json_response(200, {{"deleted", parts[1]}});
            } else {
                response = error_response(405, "method_not_allowed", m + " not allowed here");
            }
        } else if (m != "GET") {
            response = error_response(405, "method_not_allowed", m + " not allowed here");
        } else {
            const auto& view = parts[2];
            const auto& q = request.query;
            if (view != "ranking" && view != "instances" && view != "compare") {
                response = error_response(404, "not_found", "no such endpoint: " + request.path);
            } else {
                const ExperimentRecord record = load_experiment(options_.store_root, parts[1]);
                if (view == "ranking") {
                    const auto it = q.find("weights");
                    const MetricWeights weights = it == q.end() || it->second.empty()
                                                      ? record.config.metric_weights
                                                      : parse_weights(it->second);
                    response = json_response(200, ranking_view(record, weights));
                } else if (view == "instances") {
                    if (record.results.empty()) {
                        response = error_response(404, "no_results", "experiment has no evaluated metamodels");
                    } else {
                        ProblematicCriterion criterion = record.config.problematic;
                        criterion.min_fraction_wrong =
                            parse_threshold(q, "min_fraction_wrong", criterion.min_fraction_wrong);
                        criterion.confidence_ceiling =
                            parse_threshold(q, "confidence_ceiling", criterion.confidence_ceiling);
                        const auto it = q.find("problematic");
                        const bool only = it != q.end() && truthy(it->second);
                        response = json_response(200, instances_view(record, only, criterion));
                    }
                } else {
                    const auto a = q.find("a"), b = q.find("b");
                    if (a == q.end() || b == q.end())
                        response = error_response(422, "missing_parameter", "compare needs both 'a' and 'b'");
                    else
                        response = json_response(200, comparison_view(record, a->second, b->second));
                }
            }
        }
    } catch (const Error& e) {
        response = error_response(status_for(e), e.code(), e.what());
    } catch (const std::invalid_argument& e) {
        response = error_response(422, "invalid_parameter", e.what());
    } catch (const std::exception& e) {
        response = error_response(500, "internal", e.what());
    }
    if (!options_.cors_origin.empty()) {
        response.headers["Access-Control-Allow-Origin"] = options_.cors_origin;
        response.headers["Access-Control-Allow-Methods"] = "GET, POST, DELETE, OPTIONS";
        response.headers["Access-Control-Allow-Headers"] = "Content-Type";
    }
    return response;
}

bool serve(ApiService& service, const std::string& host, int port) {
    httplib::Server server;
    auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
        ApiRequest request;
        request.method = req.method;
        request.path = req.path;
        for (const auto& [key, value] : req.params)
            request.query.emplace(key, value);
        request.body = req.body;
        const ApiResponse response = service.handle(request);
        res.status = response.status;
        for (const auto& [key, value] : response.headers)
            res.set_header(key, value);
        if (!response.content_type.empty())
            res.set_content(response.body, response.content_type);
    };
    server.Get(".*", forward);
    server.Post(".*", forward);
    server.Delete(".*", forward);
    server.Options(".*", forward);
    server.Put(".*", forward);
    if (!server.bind_to_port(host, port))
        return false;
    std::cerr << "metastack: serving " << service.options().store_root.string() << " on http://" << host
              << ':' << port << '\n';
    return server.listen_after_bind();
}

} // namespace metastack
