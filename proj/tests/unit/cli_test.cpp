#include "fixtures.hpp"

#include "cli.hpp"
#include "metastack/api.hpp"
#include "metastack/store.hpp"

#include <gtest/gtest.h>
#include <httplib.h>

#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <csignal>
#include <sys/wait.h>
#include <unistd.h>

using namespace metastack;
using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "metastack");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliResult r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class CliTest : public ::testing::Test {
protected:
    fixtures::TempDir dir;

    std::string root() const { return dir.path().string(); }

    std::string write_config(const json& config, const std::string& name = "config.json") {
        const auto path = dir.path() / name;
        fixtures::write_file(path, config.dump(2));
        return path.string();
    }

    std::string saved_handmade() {
        const auto rec = fixtures::handmade_record();
        save_experiment(rec, dir.path() / "store");
        return rec.experiment_id;
    }

    std::string store() const { return (dir.path() / "store").string(); }

    ApiResponse api(const std::string& path, std::map<std::string, std::string> query) {
        ApiService service{ApiOptions{dir.path() / "store", "", 1}};
        return service.handle({"GET", path, std::move(query), ""});
    }

    static void expect_golden(const std::string& name, const std::string& actual) {
        const auto path = std::filesystem::path(METASTACK_GOLDEN_DIR) / name;
        if (std::getenv("METASTACK_UPDATE_GOLDEN") != nullptr)
            fixtures::write_file(path, actual);
        EXPECT_EQ(actual, fixtures::read_file(path)) << "golden " << name;
    }
};

} // namespace

TEST_F(CliTest, RunPrintsIdAndHonoursDuplicates) {
    const auto cfg = write_config(fixtures::toy_config_json());
    const auto first = run_cli({"run", "--config", cfg, "--out", store()});
    ASSERT_EQ(first.code, 0) << first.err;
    const auto id = first.out.substr(0, first.out.size() - 1);
    EXPECT_EQ(first.out.back(), '\n');
    EXPECT_TRUE(experiment_exists(store(), id));

    const auto dup = run_cli({"run", "--config", cfg, "--out", store()});
    EXPECT_EQ(dup.code, 3);
    EXPECT_FALSE(dup.err.empty());
    EXPECT_EQ(run_cli({"run", "--config", cfg, "--out", store(), "--overwrite"}).code, 0);
}

TEST_F(CliTest, BadConfigsExitTwo) {
    auto config = fixtures::toy_config_json();
    config.erase("target_column");
    auto r = run_cli({"run", "--config", write_config(config), "--out", store()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("target_column"), std::string::npos);

    fixtures::write_file(dir.path() / "garbage.json", "{");
    EXPECT_EQ(run_cli({"run", "--config", (dir.path() / "garbage.json").string()}).code, 2);
    EXPECT_EQ(run_cli({"run", "--config", (dir.path() / "absent.json").string()}).code, 2);

    config = fixtures::toy_config_json();
    config.erase("dataset_csv");
    config["dataset"] = (dir.path() / "absent.csv").string();
    EXPECT_EQ(run_cli({"run", "--config", write_config(config)}).code, 2);
    EXPECT_EQ(run_cli({"run"}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST_F(CliTest, UnknownIdsExitFour) {
    EXPECT_EQ(run_cli({"rank", "feedfacefeedface", "--root", store()}).code, 4);
    EXPECT_EQ(run_cli({"compare", "feedfacefeedface", "a", "b", "--root", store()}).code, 4);
    EXPECT_EQ(run_cli({"problematic", "feedfacefeedface", "--root", store()}).code, 4);
    const auto id = saved_handmade();
    EXPECT_EQ(run_cli({"compare", id, "dt-00000001", "nope", "--root", store()}).code, 4);
}

TEST_F(CliTest, RankJsonMatchesApiBytes) {
    const auto cfg = write_config(fixtures::toy_config_json());
    const auto id_line = run_cli({"run", "--config", cfg, "--out", store()}).out;
    const auto id = id_line.substr(0, id_line.size() - 1);

    const auto cli_default = run_cli({"rank", id, "--format", "json", "--root", store()});
    ASSERT_EQ(cli_default.code, 0) << cli_default.err;
    EXPECT_EQ(cli_default.out, api("/experiments/" + id + "/ranking", {}).body);

    const auto cli_weighted = run_cli({"rank", id, "--format", "json", "--weights", "accuracy:0.5,mcc:0.5", "--root", store()});
    EXPECT_EQ(cli_weighted.out, api("/experiments/" + id + "/ranking", {{"weights", "accuracy:0.5,mcc:0.5"}}).body);

    const auto scaled = run_cli({"rank", id, "--format", "json", "--weights", "accuracy:5,mcc:5", "--root", store()});
    EXPECT_EQ(json::parse(scaled.out)["ranking"].size(), json::parse(cli_weighted.out)["ranking"].size());
    std::vector<std::string> a, b;
    const auto scaled_rows = json::parse(scaled.out)["ranking"];
    const auto weighted_rows = json::parse(cli_weighted.out)["ranking"];
    for (const auto& row : scaled_rows)
        a.push_back(row["candidate_id"]);
    for (const auto& row : weighted_rows)
        b.push_back(row["candidate_id"]);
    EXPECT_EQ(a, b);

    const auto table = run_cli({"rank", id, "--root", store()});
    EXPECT_EQ(table.code, 0);
    EXPECT_NE(table.out.find("candidate"), std::string::npos);
    EXPECT_EQ(run_cli({"rank", id, "--weights", "bogus:1", "--root", store()}).code, 2);
}

TEST_F(CliTest, CompareJsonMatchesApiBytes) {
    const auto id = saved_handmade();
    const auto cli = run_cli({"compare", id, "dt-00000001", "nb-00000002", "--root", store()});
    ASSERT_EQ(cli.code, 0) << cli.err;
    EXPECT_EQ(cli.out, api("/experiments/" + id + "/compare", {{"a", "dt-00000001"}, {"b", "nb-00000002"}}).body);
}

TEST_F(CliTest, SelfCompareHasZeroDeltas) {
    const auto id = saved_handmade();
    const auto r = run_cli({"compare", id, "nb-00000002", "nb-00000002", "--root", store()});
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["agreement"]["only_a"], 0);
    for (const auto& d : j["per_instance"])
        EXPECT_EQ(d["delta"], 0.0);
    for (const auto& [k, v] : j["metric_delta"].items())
        EXPECT_TRUE(v.is_null() || v == 0.0) << k;
}

TEST_F(CliTest, GoldenOutputs) {
    const auto id = saved_handmade();
    expect_golden("rank.json", run_cli({"rank", id, "--format", "json", "--root", store()}).out);
    expect_golden("rank.csv", run_cli({"rank", id, "--format", "csv", "--root", store()}).out);
    expect_golden("rank_accuracy.json",
                  run_cli({"rank", id, "--format", "json", "--weights", "accuracy:1", "--root", store()}).out);
    expect_golden("compare.json", run_cli({"compare", id, "dt-00000001", "nb-00000002", "--root", store()}).out);
    expect_golden("compare.csv",
                  run_cli({"compare", id, "dt-00000001", "nb-00000002", "--format", "csv", "--root", store()}).out);
    expect_golden("problematic.txt", run_cli({"problematic", id, "--root", store()}).out);
}

TEST_F(CliTest, ProblematicOnPerfectExperimentIsEmpty) {
    auto rec = fixtures::handmade_record();
    for (auto& r : rec.results) {
        for (std::size_t i = 0; i < rec.labels.size(); ++i) {
            const auto y = static_cast<std::size_t>(rec.labels[i]);
            r.oof_probabilities(i, y) = 0.9;
            r.oof_probabilities(i, 1 - y) = 0.1;
            r.predicted_labels[i] = rec.labels[i];
            r.correct[i] = true;
        }
    }
    save_experiment(rec, dir.path() / "store");
    const auto r = run_cli({"problematic", rec.experiment_id, "--min-fraction-wrong", "1.0", "--root", store()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "");
    const auto j = run_cli({"problematic", rec.experiment_id, "--format", "json", "--root", store()});
    EXPECT_EQ(json::parse(j.out)["instances"], json::array());
}

TEST_F(CliTest, ListShowsSavedExperiments) {
    const auto id = saved_handmade();
    const auto r = run_cli({"list", "--root", store()});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind(id + "\t", 0), 0u);
}

TEST_F(CliTest, EnvironmentSelectsStore) {
    const auto id = saved_handmade();
    ::setenv("METASTACK_DATA_ROOT", store().c_str(), 1);
    const auto r = run_cli({"rank", id, "--format", "csv"});
    ::unsetenv("METASTACK_DATA_ROOT");
    EXPECT_EQ(r.code, 0) << r.err;
}

#ifdef METASTACK_CLI_BINARY
TEST_F(CliTest, ServeAnswersListing) {
    const auto id = saved_handmade();
    const int port = 20000 + static_cast<int>(::getpid() % 20000);
    const pid_t child = ::fork();
    ASSERT_GE(child, 0);
    if (child == 0) {
        const std::string port_text = std::to_string(port);
        const std::string root_text = store();
        ::execl(METASTACK_CLI_BINARY, "metastack", "serve", "--port", port_text.c_str(), "--root",
                root_text.c_str(), static_cast<char*>(nullptr));
        ::_exit(127);
    }
    httplib::Client client("127.0.0.1", port);
    httplib::Result res;
    for (int attempt = 0; attempt < 100 && !res; ++attempt) {
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
        res = client.Get("/experiments");
    }
    ASSERT_TRUE(res) << "server did not come up";
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(json::parse(res->body)[0]["experiment_id"], id);
    const auto ranking = client.Get("/experiments/" + id + "/ranking?weights=accuracy:1");
    ASSERT_TRUE(ranking);
    EXPECT_EQ(ranking->body, api("/experiments/" + id + "/ranking", {{"weights", "accuracy:1"}}).body);
    const auto missing = client.Get("/experiments/nope");
    ASSERT_TRUE(missing);
    EXPECT_EQ(missing->status, 404);
    ::kill(child, SIGTERM);
    int status = 0;
    ::waitpid(child, &status, 0);
}
#endif
