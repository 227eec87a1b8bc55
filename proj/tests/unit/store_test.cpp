#include "fixtures.hpp"

#include "metastack/errors.hpp"
#include "metastack/serialization.hpp"
#include "metastack/store.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <limits>

using namespace metastack;
using fixtures::TempDir;

TEST(Store, RoundTripsRandomRecords) {
    TempDir dir;
    Rng rng(2026);
    for (int i = 0; i < 50; ++i) {
        auto rec = fixtures::random_record(rng);
        rec.experiment_id = "rec-" + std::to_string(i);
        const auto path = save_experiment(rec, dir.path());
        EXPECT_EQ(path, dir.path() / (rec.experiment_id + ".json"));
        EXPECT_EQ(load_experiment(path), rec) << i;
        EXPECT_EQ(load_experiment(dir.path(), rec.experiment_id), rec);
    }
}

TEST(Store, NumbersSurviveAtFullPrecision) {
    TempDir dir;
    Rng rng(1);
    auto rec = fixtures::random_record(rng);
    auto& p = rec.results[0].oof_probabilities;
    p(0, 0) = 0.1 + 0.2;
    p(0, 1) = 1.0 - p(0, 0);
    rec.results[0].fit_seconds = std::numeric_limits<double>::denorm_min();
    rec.results[0].metrics.accuracy = 1.0 / 3.0;
    save_experiment(rec, dir.path());
    const auto back = load_experiment(dir.path(), rec.experiment_id);
    EXPECT_EQ(back.results[0].oof_probabilities(0, 0), 0.1 + 0.2);
    EXPECT_EQ(back.results[0].fit_seconds, std::numeric_limits<double>::denorm_min());
    EXPECT_EQ(back.results[0].metrics.accuracy, 1.0 / 3.0);
}

TEST(Store, DuplicateNeedsOverwrite) {
    TempDir dir;
    Rng rng(2);
    auto rec = fixtures::random_record(rng);
    save_experiment(rec, dir.path());
    EXPECT_THROW(save_experiment(rec, dir.path()), DuplicateExperiment);
    rec.config.name = "changed";
    EXPECT_NO_THROW(save_experiment(rec, dir.path(), true));
    EXPECT_EQ(load_experiment(dir.path(), rec.experiment_id).config.name, "changed");
}

TEST(Store, CorruptFilesRaiseSchemaErrors) {
    TempDir dir;
    Rng rng(3);
    const auto rec = fixtures::random_record(rng);
    const auto path = save_experiment(rec, dir.path());
    const std::string good = fixtures::read_file(path);

    fixtures::write_file(path, good.substr(0, good.size() / 2));
    EXPECT_THROW(load_experiment(path), SchemaValidationError);

    fixtures::write_file(path, "[1, 2, 3]");
    EXPECT_THROW(load_experiment(path), SchemaValidationError);

    auto j = nlohmann::json::parse(good);
    j["schema_version"] = 2;
    fixtures::write_file(path, j.dump());
    EXPECT_THROW(load_experiment(path), SchemaValidationError);

    j = nlohmann::json::parse(good);
    j["results"][0]["oof_probabilities"] = "nope";
    fixtures::write_file(path, j.dump());
    EXPECT_THROW(load_experiment(path), SchemaValidationError);
}

TEST(Store, MissingAndUnsafeIdsAreNotFound) {
    TempDir dir;
    EXPECT_THROW(load_experiment(dir.path(), "nothing"), ExperimentNotFound);
    EXPECT_THROW(load_experiment(dir.path(), "../etc/passwd"), ExperimentNotFound);
    EXPECT_THROW(load_experiment(dir.path() / "x.json"), ExperimentNotFound);
    EXPECT_FALSE(experiment_exists(dir.path(), "nothing"));
}

TEST(Store, DeleteRemovesRecord) {
    TempDir dir;
    Rng rng(4);
    const auto rec = fixtures::random_record(rng);
    save_experiment(rec, dir.path());
    EXPECT_TRUE(experiment_exists(dir.path(), rec.experiment_id));
    delete_experiment(dir.path(), rec.experiment_id);
    EXPECT_FALSE(experiment_exists(dir.path(), rec.experiment_id));
    EXPECT_THROW(delete_experiment(dir.path(), rec.experiment_id), ExperimentNotFound);
}

TEST(Store, ListingEmptyRoot) {
    TempDir dir;
    EXPECT_TRUE(list_experiments(dir.path()).experiments.empty());
    EXPECT_TRUE(list_experiments(dir.path() / "absent").experiments.empty());
}

TEST(Store, ListingNewestFirstWithCorruptFileReported) {
    TempDir dir;
    Rng rng(5);
    const char* stamps[] = {"2026-01-01T00:00:00.000Z", "2026-03-01T00:00:00.000Z", "2026-02-01T00:00:00.000Z"};
    for (int i = 0; i < 3; ++i) {
        auto rec = fixtures::random_record(rng);
        rec.experiment_id = "e" + std::to_string(i);
        rec.created_at = stamps[i];
        save_experiment(rec, dir.path());
    }
    auto listing = list_experiments(dir.path());
    ASSERT_EQ(listing.experiments.size(), 3u);
    EXPECT_EQ(listing.experiments[0].experiment_id, "e1");
    EXPECT_EQ(listing.experiments[1].experiment_id, "e2");
    EXPECT_EQ(listing.experiments[2].experiment_id, "e0");
    EXPECT_TRUE(listing.warnings.empty());

    fixtures::write_file(dir.path() / "e2.json", "{ not json");
    fixtures::write_file(dir.path() / "notes.txt", "ignored");
    listing = list_experiments(dir.path());
    EXPECT_EQ(listing.experiments.size(), 2u);
    ASSERT_EQ(listing.warnings.size(), 1u);
    EXPECT_NE(listing.warnings[0].file.find("e2.json"), std::string::npos);
}

TEST(Store, SaveLeavesNoTemporaryFiles) {
    TempDir dir;
    Rng rng(6);
    save_experiment(fixtures::random_record(rng), dir.path() / "nested" / "root");
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir.path() / "nested" / "root")) {
        EXPECT_EQ(entry.path().extension(), ".json");
        ++files;
    }
    EXPECT_EQ(files, 1u);
}

TEST(Store, DefaultRootFollowsEnvironment) {
    ::setenv("METASTACK_DATA_ROOT", "/tmp/somewhere", 1);
    EXPECT_EQ(default_store_root(), std::filesystem::path("/tmp/somewhere"));
    ::unsetenv("METASTACK_DATA_ROOT");
    EXPECT_EQ(default_store_root(), std::filesystem::path("experiments"));
}

TEST(Serialization, StableJsonDropsVolatileFields) {
    Rng rng(7);
    auto a = fixtures::random_record(rng);
    auto b = a;
    b.created_at = "1999-01-01T00:00:00.000Z";
    for (auto& r : b.results)
        r.fit_seconds += 3.0;
    EXPECT_EQ(stable_json(a), stable_json(b));
    EXPECT_FALSE(stable_json(a).contains("created_at"));
    b.results[0].oof_probabilities(0, 0) += 1e-15;
    EXPECT_NE(stable_json(a), stable_json(b));
}

TEST(Serialization, ConfigRoundTripAndStrictness) {
    const auto config = normalize_config(config_from_json(fixtures::toy_config_json()));
    EXPECT_EQ(config_from_json(to_json(config)), config);

    auto j = fixtures::toy_config_json();
    j.erase("target_column");
    try {
        config_from_json(j);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.code(), "missing_target");
    }
    j = fixtures::toy_config_json();
    j["surprise"] = 1;
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = fixtures::toy_config_json();
    j["metamodel_grid"] = nlohmann::json::object();
    EXPECT_THROW(config_from_json(j), EmptyGrid);
    j = fixtures::toy_config_json();
    j["k"] = "five";
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = fixtures::toy_config_json();
    j["metric_weights"] = {{"bogus", 1}};
    EXPECT_THROW(config_from_json(j), UnknownMetric);
}

TEST(Serialization, OmittedBaseSeedIsDerivedFromModelId) {
    auto j = fixtures::toy_config_json();
    const auto a = config_from_json(j);
    EXPECT_NE(a.base_specs[0].seed, a.base_specs[1].seed);
    j["seed"] = 12;
    EXPECT_NE(config_from_json(j).base_specs[0].seed, a.base_specs[0].seed);
}
