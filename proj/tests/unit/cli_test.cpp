#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "ofd/cli.hpp"
#include "ofd/relation.hpp"
#include "ofd/serialize.hpp"

using namespace ofd;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("ofd_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(std::vector<std::string> args) {
        out_.str("");
        err_.str("");
        return cli::main(args, out_, err_);
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    static std::string data(const std::string& name) { return ofd::testing::data_path(name).string(); }
    static std::string slurp(const std::string& p) {
        std::ifstream f(p);
        std::stringstream s;
        s << f.rdbuf();
        return s.str();
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, SynonymModeWritesJson) {
    ASSERT_EQ(run({"--input", data("clinical.csv"), "--ontology", data("clinical_ontology.json"), "--mode", "syn",
                   "--output", path("ofds.json")}),
              0)
        << err_.str();
    auto doc = nlohmann::json::parse(slurp(path("ofds.json")));
    nlohmann::json expected = nlohmann::json::parse(R"({"lhs":["CC"],"rhs":"CTRY","kind":"synonym","support":1.0})");
    EXPECT_NE(std::find(doc.begin(), doc.end(), expected), doc.end());
    EXPECT_TRUE(out_.str().empty());
}

TEST_F(CliTest, InheritanceModeOnExtendedFixture) {
    ASSERT_EQ(run({"--input", data("clinical_extended.csv"), "--ontology", data("clinical_ontology.json"), "--mode",
                   "inh", "--theta", "2"}),
              0)
        << err_.str();
    auto doc = nlohmann::json::parse(out_.str());
    nlohmann::json expected = nlohmann::json::parse(
        R"({"lhs":["SYMP","DIAG"],"rhs":"MED","kind":"inheritance","theta":2,"support":1.0})");
    EXPECT_NE(std::find(doc.begin(), doc.end(), expected), doc.end());
}

TEST_F(CliTest, BothModesListSynonymsFirst) {
    ASSERT_EQ(run({"--input", data("clinical.csv"), "--ontology", data("clinical_ontology.json"), "--mode", "both",
                   "--theta", "1", "--format", "text"}),
              0);
    auto text = out_.str();
    auto syn = text.find("synonym"), inh = text.find("inheritance");
    ASSERT_NE(syn, std::string::npos);
    ASSERT_NE(inh, std::string::npos);
    EXPECT_LT(syn, inh);
    EXPECT_EQ(text.find("synonym", inh), std::string::npos);
}

TEST_F(CliTest, MissingOntologyWritesNothing) {
    EXPECT_EQ(run({"--input", data("clinical.csv"), "--ontology", path("missing.json"), "--output", path("o.json"),
                   "--stats", path("s.json")}),
              2);
    EXPECT_FALSE(fs::exists(path("o.json")));
    EXPECT_FALSE(fs::exists(path("s.json")));
    EXPECT_NE(err_.str().find("error"), std::string::npos);
}

TEST_F(CliTest, ConfigErrors) {
    const auto in = data("clinical.csv"), onto = data("clinical_ontology.json");
    EXPECT_EQ(run({"--input", in, "--ontology", onto, "--mode", "inh"}), 1);
    EXPECT_EQ(run({"--input", in, "--ontology", onto, "--mode", "syn", "--theta", "2"}), 1);
    EXPECT_EQ(run({"--input", in, "--ontology", onto, "--tau", "0"}), 1);
    EXPECT_EQ(run({"--input", in, "--ontology", onto, "--mode", "fuzzy"}), 1);
    EXPECT_EQ(run({"--input", in}), 1);
    EXPECT_EQ(run({"--input", in, "--ontology", onto, "--bogus"}), 1);
    EXPECT_EQ(run({"--input", in, "--ontology", onto, "--inject-errors", "1.5"}), 1);
    EXPECT_EQ(run({"--input", in, "--ontology", onto, "--delimiter", ";;"}), 1);
}

TEST_F(CliTest, DataErrors) {
    std::ofstream(path("ragged.csv")) << "A,B\n1\n";
    EXPECT_EQ(run({"--input", path("ragged.csv"), "--ontology", data("clinical_ontology.json")}), 2);
    std::ofstream(path("bad.json")) << "{\"classes\": [{\"id\": \"a\", \"synonyms\": []}]}";
    EXPECT_EQ(run({"--input", data("clinical.csv"), "--ontology", path("bad.json")}), 2);
    EXPECT_EQ(run({"--input", path("nope.csv"), "--ontology", data("clinical_ontology.json")}), 2);
}

TEST_F(CliTest, StatsFile) {
    ASSERT_EQ(run({"--input", data("clinical.csv"), "--ontology", data("clinical_ontology.json"), "--stats",
                   path("stats.json"), "--output", path("o.json")}),
              0);
    auto stats = nlohmann::json::parse(slurp(path("stats.json")));
    ASSERT_EQ(stats.size(), 1u);
    EXPECT_EQ(stats[0]["kind"], "synonym");
    EXPECT_EQ(stats[0]["levels"][0]["level"], 1);
    EXPECT_EQ(stats[0]["levels"][0]["candidates"], 20);
    EXPECT_EQ(stats[0]["levels"][0]["ofds"], 8);
    EXPECT_EQ(stats[0]["total_ofds"], 10);
}

TEST_F(CliTest, ViolationReportNextToOutput) {
    ASSERT_EQ(run({"--input", data("cleaning_cc_ctry.csv"), "--ontology", data("clinical_ontology.json"), "--tau",
                   "0.9", "--output", path("o.json"), "--report-violations"}),
              0)
        << err_.str();
    auto report = nlohmann::json::parse(slurp(path("o.json.violations.json")));
    bool found = false;
    for (const auto& e : report) {
        if (e["ofd"]["lhs"] == nlohmann::json::array({"CC"}) && e["ofd"]["rhs"] == "CTRY") {
            found = true;
            EXPECT_NEAR(e["false_positive_savings"].get<double>(), 0.75, 1e-12);
            EXPECT_EQ(e["violations"][0]["minority"][0]["value"], "Frence");
        }
    }
    EXPECT_TRUE(found);
}

TEST_F(CliTest, OutputIsDeterministic) {
    std::vector<std::string> base{"--input",   data("clinical_extended.csv"),
                                  "--ontology", data("clinical_ontology.json"),
                                  "--mode",    "both",
                                  "--theta",   "1",
                                  "--tau",     "0.8",
                                  "--report-violations",
                                  "--inject-errors", "0.2",
                                  "--seed",    "5"};
    auto first = base, second = base;
    first.insert(first.end(), {"--output", path("a.json"), "--inject-log", path("a.log")});
    second.insert(second.end(), {"--output", path("b.json"), "--inject-log", path("b.log"), "--threads", "3"});
    ASSERT_EQ(run(first), 0) << err_.str();
    ASSERT_EQ(run(second), 0) << err_.str();
    EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
    EXPECT_EQ(slurp(path("a.json.violations.json")), slurp(path("b.json.violations.json")));
    EXPECT_EQ(slurp(path("a.log")), slurp(path("b.log")));
    EXPECT_EQ(nlohmann::json::parse(slurp(path("a.log"))).size(), 2u);
}

TEST_F(CliTest, JsonParsesBackIntoOfdSet) {
    ASSERT_EQ(run({"--input", data("clinical.csv"), "--ontology", data("clinical_ontology.json"), "--mode", "inh",
                   "--theta", "1", "--output", path("o.json")}),
              0);
    auto schema = load_relation(data("clinical.csv")).schema();
    auto m = parse_ofd_set(slurp(path("o.json")), schema);
    EXPECT_EQ(m.kind, OfdKind::inheritance(1));
    EXPECT_EQ(ofds_to_json(schema, m.to_ofds()).dump(2) + "\n", slurp(path("o.json")));
}

TEST_F(CliTest, HeaderlessSemicolonInput) {
    std::ofstream(path("t.csv")) << "US;USA\nUS;America\nIN;India\n";
    ASSERT_EQ(run({"--input", path("t.csv"), "--ontology", data("clinical_ontology.json"), "--no-header",
                   "--delimiter", ";", "--format", "text"}),
              0)
        << err_.str();
    EXPECT_NE(out_.str().find("[A1] -> A2 synonym support=1.0"), std::string::npos);
}

TEST_F(CliTest, Help) {
    EXPECT_EQ(run({"--help"}), 0);
    EXPECT_NE(out_.str().find("--ontology"), std::string::npos);
}
