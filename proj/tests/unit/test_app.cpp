#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "aquanim/app/commands.hpp"
#include "aquanim/app/datasets.hpp"
#include "aquanim/app/service.hpp"
#include "aquanim/app/spec_doc.hpp"
#include "aquanim/error.hpp"
#include "aquanim/verify.hpp"

using namespace aquanim;
using namespace aquanim::app;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kData = AQUANIM_DATA_DIR;
const fs::path kFixtures = AQUANIM_FIXTURE_DIR;

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::EmptyData;
}

std::string spec_code_of(auto&& fn) {
    try {
        fn();
    } catch (const SpecError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no SpecError thrown";
    return {};
}

PlannedTransition plan(const json& doc) { return plan_document(doc, DatasetPolicy{kData, false}); }

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("aquanim_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

// ─── datasets ────────────────────────────────────────────────────────────────

TEST(Datasets, SamplesCsv) {
    const auto v = parse_samples_csv("value\n0.5\n1.5\n");
    ASSERT_EQ(v.size(), 2u);
    const auto h = histogram_from_samples(v, 2, 0, 2);
    EXPECT_EQ(h.densities, (std::vector<double>{0.5, 0.5}));
    EXPECT_EQ(parse_samples_csv("1\n2\n\n3\n").size(), 3u);
    try {
        parse_samples_csv("value\n1\nabc\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    EXPECT_EQ(code_of([] { parse_samples_csv("value\n"); }), ErrorCode::EmptyData);
}

TEST(Datasets, ConfusionCsvTable1) {
    const auto cm = std::get<ConfusionMatrix>(load_dataset(kData / "table1_confusion.csv", DatasetKind::Confusion));
    EXPECT_EQ(cm.total(), 3820);
    EXPECT_EQ(cm.labels, (std::vector<std::string>{"None", "Mild", "Severe"}));
    EXPECT_EQ(cm.counts[1], (std::vector<std::int64_t>{205, 102, 144}));
}

TEST(Datasets, ConfusionCsvErrors) {
    EXPECT_EQ(code_of([] { parse_confusion_csv("p/o,a,b\na,1,-2\nb,3,4\n"); }), ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] { parse_confusion_csv("p/o,a,b\nb,1,2\na,3,4\n"); }), ErrorCode::ValidationError);
    EXPECT_EQ(code_of([] { parse_confusion_csv("p/o,a,b\na,1,x\nb,3,4\n"); }), ErrorCode::ParseError);
}

TEST(Datasets, StackedCsv) {
    const auto c = parse_stacked_csv("category,level,value\nMon,car,3\nMon,bus,1\nTue,bus,2\n");
    EXPECT_EQ(c.categories, (std::vector<std::string>{"Mon", "Tue"}));
    ASSERT_EQ(c.levels.size(), 2u);
    EXPECT_EQ(c.levels[0].label, "car");
    EXPECT_EQ(c.heights[1], (std::vector<double>{0, 2}));
    EXPECT_EQ(code_of([] { parse_stacked_csv("Mon,car,-1\n"); }), ErrorCode::ValidationError);
}

TEST(Datasets, MissingFile) {
    EXPECT_THROW(load_dataset(kData / "no_such.csv", DatasetKind::Samples), Error);
}

// ─── documents ───────────────────────────────────────────────────────────────

TEST(SpecDoc, EveryShippedSpecPlansAndVerifies) {
    std::size_t n = 0;
    for (const auto& entry : fs::directory_iterator(kData)) {
        if (entry.path().extension() != ".json") continue;
        ++n;
        const auto planned = plan_document(load_document(entry.path()), DatasetPolicy{kData, false});
        const auto r = verify_script(planned.script);
        EXPECT_TRUE(r.ok()) << entry.path() << ": " << r.violation->check << " " << r.violation->detail;
    }
    EXPECT_GE(n, 8u);
}

TEST(SpecDoc, Errors) {
    EXPECT_EQ(spec_code_of([] { parse_document("{not json"); }), "ParseError");
    EXPECT_EQ(spec_code_of([] {
                  plan(json::parse(R"({"chart":{"type":"histogram","samples":[1,2],"bins":2,"range":[0,3]},
                                      "transition":{"kind":"wiggle"}})"));
              }),
              "UnknownTransition");
    EXPECT_EQ(spec_code_of([] { plan(json::parse(R"({"chart":{"type":"histogram"}})")); }), "ValidationError");
    EXPECT_EQ(spec_code_of([] {
                  plan(json::parse(R"({"chart":{"type":"rect","rect":[0,1,0,4]},
                                      "transition":{"kind":"reshape","final":[0,4,0,1]},"extra":1})"));
              }),
              "ValidationError");
    EXPECT_EQ(spec_code_of([] {
                  plan(json::parse(R"({"chart":{"type":"histogram","samples":[1,2],"bins":"two","range":[0,3]},
                                      "transition":{"kind":"rebin","new_bin_count":3}})"));
              }),
              "ValidationError");
}

TEST(SpecDoc, EngineErrorsPassThrough) {
    EXPECT_EQ(code_of([] {
                  plan(json::parse(R"({"chart":{"type":"rect","rect":[0,1,0,4]},
                                      "transition":{"kind":"reshape","final":[0,4,0,2]}})"));
              }),
              ErrorCode::AreaMismatch);
    EXPECT_EQ(code_of([] {
                  plan(json::parse(R"({"chart":{"type":"histogram","samples":[1,2],"bins":2,"range":[0,3]},
                                      "transition":{"kind":"rebin","new_bin_count":3,"new_range":[0,4]}})"));
              }),
              ErrorCode::RangeMismatch);
}

TEST(SpecDoc, RenderSectionAndPalette) {
    const auto p = plan(json::parse(R"({"chart":{"type":"rect","rect":[0,1,0,4]},
                                        "transition":{"kind":"reshape","final":[0,4,0,1]},
                                        "render":{"fps":5,"duration":1,"precision":3},
                                        "palette":{"liquid":"#102030"}})"));
    EXPECT_EQ(p.render.fps, 5);
    EXPECT_EQ(p.render.frame_count(), 6u);
    EXPECT_EQ(p.script.palette.liquid.to_hex(), "#102030FF");
    EXPECT_EQ(p.script.initial.primitives.front().fill.to_hex(), "#102030FF");
    EXPECT_EQ(spec_code_of([] { apply_palette({}, json::parse(R"({"nope":"#000000"})")); }), "ValidationError");
}

TEST(SpecDoc, DatasetConfinement) {
    const json doc = json::parse(R"({"chart":{"type":"histogram","dataset":"../specs/samples.csv","bins":4,"range":[0,10]},
                                     "transition":{"kind":"rebin","new_bin_count":5}})");
    EXPECT_NO_THROW(plan_document(doc, DatasetPolicy{kData, false}));
    EXPECT_NO_THROW(plan_document(doc, DatasetPolicy{kData, true}));
    json escape = doc;
    escape["chart"]["dataset"] = "../../CMakeLists.txt";
    EXPECT_EQ(spec_code_of([&] { plan_document(escape, DatasetPolicy{kData, true}); }), "DatasetError");
}

TEST(SpecDoc, CatalogListsEveryKind) {
    const json cat = transition_catalog();
    std::vector<std::string> kinds;
    for (const auto& k : cat["transitions"]) kinds.push_back(k["kind"]);
    for (const char* k : {"data_change", "rebin", "rebin_diffusive", "proportion_tip", "vertical_reorder",
                          "horizontal_reorder", "fluctuation_to_mosaic", "reshape"}) {
        EXPECT_NE(std::find(kinds.begin(), kinds.end(), k), kinds.end()) << k;
    }
}

// ─── commands ────────────────────────────────────────────────────────────────

TEST(Commands, RenderFramesAndFormats) {
    TempDir tmp;
    std::ostringstream log;
    ASSERT_EQ(cmd_render(kData / "rebin_7_to_13.json", tmp.path() / "frames", OutputFormat::Frames, log), kExitOk)
        << log.str();
    EXPECT_TRUE(fs::exists(tmp.path() / "frames" / "000.svg"));
    EXPECT_TRUE(fs::exists(tmp.path() / "frames" / "030.svg"));
    EXPECT_FALSE(fs::exists(tmp.path() / "frames" / "031.svg"));

    ASSERT_EQ(cmd_render(kData / "rebin_7_to_13.json", tmp.path() / "k.json", OutputFormat::Keyframes, log), kExitOk);
    const json doc = json::parse(read(tmp.path() / "k.json"));
    EXPECT_EQ(doc["frames"].size(), 31u);
    EXPECT_EQ(doc["version"], 1);

    ASSERT_EQ(cmd_render(kData / "rebin_7_to_13.json", tmp.path() / "a.svg", OutputFormat::AnimatedSvg, log), kExitOk);
    EXPECT_NE(read(tmp.path() / "a.svg").find("fill=\"freeze\""), std::string::npos);

    OutputFormat f{};
    EXPECT_TRUE(parse_format("animated-svg", f));
    EXPECT_EQ(f, OutputFormat::AnimatedSvg);
    EXPECT_FALSE(parse_format("gif", f));
}

TEST(Commands, ExitCodes) {
    TempDir tmp;
    std::ostringstream log;
    EXPECT_EQ(cmd_render(kFixtures / "range_mismatch.json", tmp.path() / "x", OutputFormat::Keyframes, log),
              kExitEngineError);
    EXPECT_NE(log.str().find("RangeMismatch"), std::string::npos);
    EXPECT_EQ(cmd_render(kFixtures / "not_json.json", tmp.path() / "y", OutputFormat::Keyframes, log), kExitSpecError);
    EXPECT_EQ(cmd_render(kFixtures / "missing.json", tmp.path() / "z", OutputFormat::Keyframes, log), kExitSpecError);
    std::ostringstream vlog;
    EXPECT_EQ(cmd_verify(kFixtures / "corrupted_rebin.json", 101, 1e-9, vlog), kExitViolation);
    EXPECT_EQ(vlog.str().rfind("FAIL ", 0), 0u) << vlog.str();
    std::ostringstream ok;
    EXPECT_EQ(cmd_verify(kData / "reshape_lh.json", 2, 1e-9, ok), kExitOk);
    EXPECT_EQ(ok.str().rfind("PASS reshape", 0), 0u) << ok.str();
    EXPECT_EQ(cmd_verify(kData / "reshape_lh.json", 1, 1e-9, ok), kExitSpecError);
}

// ─── service ─────────────────────────────────────────────────────────────────

TEST(Service, KeyframesForRebin) {
    ServiceConfig cfg;
    cfg.data_dir = kData;
    const std::string body = read(kData / "rebin_7_to_13.json");
    const HttpReply r = handle_keyframes(body, cfg);
    ASSERT_EQ(r.status, 200) << r.body;
    const json doc = json::parse(r.body);
    EXPECT_EQ(doc["frames"].size(), 15u * 2u + 1u);
    EXPECT_EQ(handle_keyframes(body, cfg).body, r.body);
}

TEST(Service, Errors) {
    ServiceConfig cfg;
    cfg.data_dir = kData;
    HttpReply r = handle_keyframes(R"({"chart":{"type":"histogram","samples":[1],"bins":1,"range":[0,2]},
                                       "transition":{"kind":"teleport"}})",
                                   cfg);
    EXPECT_EQ(r.status, 400);
    EXPECT_EQ(json::parse(r.body)["error"], "UnknownTransition");
    r = handle_keyframes("{", cfg);
    EXPECT_EQ(r.status, 400);
    r = handle_keyframes(R"({"chart":{"type":"rect","rect":[0,1,0,4]},"transition":{"kind":"reshape","final":[0,3,0,3]}})", cfg);
    EXPECT_EQ(r.status, 422);
    EXPECT_EQ(json::parse(r.body)["error"], "AreaMismatch");
    r = handle_keyframes(std::string(cfg.max_body + 1, ' '), cfg);
    EXPECT_EQ(r.status, 413);
}

TEST(Service, HealthAndCatalog) {
    EXPECT_EQ(json::parse(handle_health().body), json::parse(R"({"status":"ok"})"));
    const HttpReply r = handle_transitions();
    EXPECT_EQ(r.status, 200);
    EXPECT_TRUE(json::parse(r.body).contains("transitions"));
}
