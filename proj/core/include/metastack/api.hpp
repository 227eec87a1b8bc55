#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace metastack {

struct ApiRequest {
    std::string method; ///< "GET", "POST", ...
    std::string path;   ///< without query string
    std::map<std::string, std::string> query;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
    std::map<std::string, std::string> headers;
};

struct ApiOptions {
    std::filesystem::path store_root = "experiments";
    /// Value for Access-Control-Allow-Origin; empty disables CORS headers.
    std::string cors_origin;
    int threads = 0;
};

/// Transport-independent request handler behind the HTTP server. Every
/// error response carries an ApiError body {status, code, message}.
///
///   POST   /experiments[?overwrite=true]        run + save, -> {experiment_id, ...}
///   GET    /experiments                         -> [summary]
///   GET    /experiments/{id}                    -> record
///   DELETE /experiments/{id}                    -> {deleted}
///   GET    /experiments/{id}/ranking[?weights=] -> ranking
///   GET    /experiments/{id}/instances[?problematic=&min_fraction_wrong=&confidence_ceiling=]
///   GET    /experiments/{id}/compare?a=&b=      -> pair comparison
class ApiService {
public:
    explicit ApiService(ApiOptions options);

    ApiResponse handle(const ApiRequest& request);

    const ApiOptions& options() const noexcept { return options_; }

private:
    ApiResponse post_experiment(const ApiRequest& request);
    std::mutex& experiment_mutex(const std::string& experiment_id);

    ApiOptions options_;
    std::mutex registry_mutex_;
    std::map<std::string, std::unique_ptr<std::mutex>> run_mutexes_;
};

/// Blocks serving HTTP/1.1 on host:port until the process is stopped.
/// Returns false if the socket cannot be bound.
bool serve(ApiService& service, const std::string& host, int port);

inline constexpr const char* default_host = "127.0.0.1";
inline constexpr int default_port = 8765;

} // namespace metastack
