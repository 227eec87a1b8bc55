#include "metastack/store.hpp"

#include "metastack/errors.hpp"
#include "metastack/serialization.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace metastack {

namespace fs = std::filesystem;

namespace {

bool valid_id(const std::string& id) {
    if (id.empty() || id.size() > 128)
        return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
               c == '-';
    });
}

fs::path record_path(const fs::path& root, const std::string& id) {
    return root / (id + ".json");
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IOFailure("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

fs::path save_experiment(const ExperimentRecord& record, const fs::path& root, bool overwrite) {
    if (!valid_id(record.experiment_id))
        throw IOFailure("invalid experiment id: '" + record.experiment_id + "'");
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec)
        throw IOFailure("cannot create store directory " + root.string() + ": " + ec.message());

    const fs::path target = record_path(root, record.experiment_id);
    if (!overwrite && fs::exists(target))
        throw DuplicateExperiment(record.experiment_id);

    static std::atomic<unsigned> counter{0};
    std::ostringstream suffix;
    suffix << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "." << counter++;
    const fs::path temp = root / ("." + record.experiment_id + suffix.str());
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IOFailure("cannot write " + temp.string());
        out << to_json(record).dump(2) << '\n';
        out.flush();
        if (!out) {
            out.close();
            fs::remove(temp, ec);
            throw IOFailure("write failed for " + temp.string());
        }
    }
    if (!overwrite && fs::exists(target)) {
        fs::remove(temp, ec);
        throw DuplicateExperiment(record.experiment_id);
    }
    fs::rename(temp, target, ec);
    if (ec) {
        fs::remove(temp);
        throw IOFailure("cannot move record into place: " + ec.message());
    }
    return target;
}

ExperimentRecord load_experiment(const fs::path& path) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec))
        throw ExperimentNotFound(path.stem().string());
    const std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaValidationError(path.filename().string() + ": not valid JSON (" + e.what() + ")");
    }
    return record_from_json(j);
}

ExperimentRecord load_experiment(const fs::path& root, const std::string& experiment_id) {
    if (!valid_id(experiment_id))
        throw ExperimentNotFound(experiment_id);
    return load_experiment(record_path(root, experiment_id));
}

bool experiment_exists(const fs::path& root, const std::string& experiment_id) {
    std::error_code ec;
    return valid_id(experiment_id) && fs::is_regular_file(record_path(root, experiment_id), ec);
}

void delete_experiment(const fs::path& root, const std::string& experiment_id) {
    if (!experiment_exists(root, experiment_id))
        throw ExperimentNotFound(experiment_id);
    std::error_code ec;
    fs::remove(record_path(root, experiment_id), ec);
    if (ec)
        throw IOFailure("cannot delete " + experiment_id + ": " + ec.message());
}

ExperimentListing list_experiments(const fs::path& root) {
    ExperimentListing listing;
    std::error_code ec;
    if (!fs::is_directory(root, ec))
        return listing;

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(root, ec)) {
        const auto& p = entry.path();
        if (entry.is_regular_file() && p.extension() == ".json" && p.filename().string().front() != '.')
            files.push_back(p);
    }
    std::sort(files.begin(), files.end());

    for (const auto& file : files) {
        try {
            const auto record = load_experiment(file);
            listing.experiments.push_back({record.experiment_id, record.created_at, record.dataset_summary});
        } catch (const std::exception& e) {
            listing.warnings.push_back({file.filename().string(), e.what()});
        }
    }
    std::stable_sort(listing.experiments.begin(), listing.experiments.end(),
                     [](const ExperimentSummary& a, const ExperimentSummary& b) {
                         if (a.created_at != b.created_at)
                             return a.created_at > b.created_at;
                         return a.experiment_id < b.experiment_id;
                     });
    return listing;
}

fs::path default_store_root() {
    if (const char* env = std::getenv("METASTACK_DATA_ROOT"); env != nullptr && *env != '\0')
        return env;
    return "experiments";
}

} // namespace metastack
