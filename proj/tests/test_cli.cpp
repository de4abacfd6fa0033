#include "cli.hpp"

#include "rainbow/canonical.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/lattice.hpp"
#include "rainbow/poset_io.hpp"
#include "rainbow/universal_tree.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rainbow;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args, int expected_code = 0)
{
    args.insert(args.begin(), {"--format", "json"});
    const Outcome o = run(args);
    EXPECT_EQ(o.code, expected_code) << o.err;
    return nlohmann::json::parse(o.out);
}

class CliFiles : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / ("rainbow_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text)
    {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

    std::string construct(const std::string& file, std::vector<std::string> args)
    {
        args.insert(args.begin(), "construct");
        const Outcome o = run(args);
        EXPECT_EQ(o.code, 0) << o.err;
        return write(file, o.out);
    }

    fs::path dir_;
};

} // namespace

TEST_F(CliFiles, ConstructOutputReparsesToTheSamePoset)
{
    const std::vector<std::pair<std::vector<std::string>, Poset>> cases{
        {{"chain", "4"}, chain(4)},
        {{"antichain", "3"}, antichain(3)},
        {{"organ", "3"}, organ(3)},
        {{"harp", "2"}, harp(2)},
        {{"vee"}, vee()},
        {{"jay"}, jay()},
        {{"diamond"}, diamond()},
        {{"multilevel", "2", "3"}, complete_multilevel({2, 3})},
        {{"downtree", "2", "3"}, downtree(2, 3)},
        {{"uptree", "3", "2"}, uptree(3, 2)},
        {{"d-jk", "2", "4"}, d_jk(2, 4)},
        {{"o-jk", "2", "5"}, o_jk(2, 5)},
        {{"a3-witness"}, a3_witness()},
        {{"universal-tree", "2"}, universal_tree(2)},
    };
    for (const auto& [args, expected] : cases) {
        const std::string file = construct(args.front() + ".poset", args);
        const Poset back = read_poset_file(file);
        EXPECT_TRUE(are_isomorphic(back, expected)) << args.front();
        EXPECT_EQ(back.labels(), expected.labels()) << args.front();
    }
}

TEST_F(CliFiles, BlowupFromFile)
{
    const std::string a3 = construct("a3.poset", {"antichain", "3"});
    const Outcome o = run({"construct", "blowup", a3, "2", "0", "1"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_TRUE(are_isomorphic(parse_poset(o.out), organ(3)));
}

TEST_F(CliFiles, ForcesReportsJson)
{
    const std::string h2 = construct("harp2.poset", {"harp", "2"});
    const std::string d = construct("diamond.poset", {"diamond"});
    const auto yes = run_json({"forces", h2, d});
    EXPECT_EQ(yes["schema"], 1);
    EXPECT_EQ(yes["forces"], true);
    EXPECT_TRUE(yes.contains("elapsed_ms"));
    EXPECT_FALSE(yes.contains("refutation"));
    const auto no = run_json({"forces", d, d});
    EXPECT_EQ(no["forces"], false);
    EXPECT_EQ(no["refutation"].size(), 4u);
}

TEST_F(CliFiles, MinimalAndSearch)
{
    const std::string o2 = construct("o2.poset", {"organ", "2"});
    const std::string a2 = construct("a2.poset", {"antichain", "2"});
    EXPECT_EQ(run_json({"minimal", o2, a2})["minimal"], true);
    const std::string o3 = construct("o3.poset", {"organ", "3"});
    const auto not_min = run_json({"minimal", o3, a2});
    EXPECT_EQ(not_min["forces"], true);
    EXPECT_EQ(not_min["minimal"], false);
    const auto found = run_json({"search-m", a2, "--max-size", "5"});
    ASSERT_EQ(found["count"], 1);
    EXPECT_TRUE(are_isomorphic(parse_poset(found["posets"][0].get<std::string>()), organ(2)));
    const auto m = run_json({"m-value", a2});
    EXPECT_EQ(m["lower"], 3);
    EXPECT_EQ(m["exact"], true);
}

TEST_F(CliFiles, EmbedPrintsAVerifiedCertificate)
{
    const std::string v = construct("vee.poset", {"vee"});
    const Outcome o = run({"embed", "--tree", v, "--k", "3", "--seed", "5"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_NE(o.out.find(" -> "), std::string::npos);
    EXPECT_NE(o.out.find("verified: true"), std::string::npos);
    const std::string c2 = construct("c2.poset", {"chain", "2"});
    const auto all = run_json({"embed", "--tree", c2, "--exhaustive"});
    EXPECT_EQ(all["colorings"], 203);
    EXPECT_EQ(all["all_verified"], true);
    const std::string a2 = construct("a2.poset", {"antichain", "2"});
    EXPECT_EQ(run({"embed", "--tree", a2}).code, cli::Exit::usage);
}

TEST_F(CliFiles, LatticeCommands)
{
    const std::string f = write("tight.family", serialize_family(SetFamily(4, {0, 1, 2, 3, 7, 11, 15})));
    EXPECT_EQ(run_json({"lubell", f})["value"], "19/6");
    EXPECT_EQ(run_json({"sigma", "4", "2"})["value"], 10);
    const auto mm = run_json({"minmax", f});
    EXPECT_EQ(mm["identity_holds"], true);
    EXPECT_EQ(mm["value"], "19/6");
    const std::string a2 = construct("a2.poset", {"antichain", "2"});
    EXPECT_EQ(run_json({"lar-star", "4", a2})["value"], 8);
    const std::string o2 = construct("o2.poset", {"organ", "2"});
    const auto la = run_json({"la-star", "4", o2});
    EXPECT_EQ(la["value"], 8);
    EXPECT_EQ(la["witness"].size(), 8u);
}

TEST_F(CliFiles, GenWritesFilesAndManifest)
{
    const auto j = run_json({"gen", "--max-size", "4", "--out", (dir_ / "gen").string()});
    EXPECT_EQ(j["counts"]["4"], 16);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(dir_ / "gen")) {
        if (e.path().extension() == ".poset") {
            ++files;
            const Poset p = read_poset_file(e.path().string());
            EXPECT_EQ(e.path().stem().string(), canonical_key(p).hex_digest());
        }
    }
    EXPECT_EQ(files, 1u + 2 + 5 + 16);
    std::ifstream manifest(dir_ / "gen" / "manifest.txt");
    std::string all((std::istreambuf_iterator<char>(manifest)), {});
    EXPECT_NE(all.find("4 16"), std::string::npos);
}

TEST_F(CliFiles, IdenticalRunsGiveIdenticalBytes)
{
    const std::string d = construct("diamond.poset", {"diamond"});
    const std::string v = construct("vee.poset", {"vee"});
    const std::vector<std::string> args{"--format", "json", "--no-timing", "forces", d, d};
    EXPECT_EQ(run(args).out, run(args).out);
    const std::vector<std::string> embed{"--format", "json", "--no-timing", "embed", "--tree", v, "--seed", "9"};
    EXPECT_EQ(run(embed).out, run(embed).out);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, cli::Exit::usage);
    EXPECT_EQ(run({"no-such-command"}).code, cli::Exit::usage);
    EXPECT_EQ(run({"construct", "nonsense"}).code, cli::Exit::usage);
    EXPECT_EQ(run({"construct", "chain"}).code, cli::Exit::usage);
    EXPECT_EQ(run({"forces", "/nonexistent/a", "/nonexistent/b"}).code, cli::Exit::usage);
    const Outcome o = run({"--format", "json", "construct", "d-jk", "1", "4"});
    EXPECT_EQ(o.code, cli::Exit::usage);
    EXPECT_EQ(nlohmann::json::parse(o.err)["error"], "BadParams");
    EXPECT_EQ(run({"--help"}).code, cli::Exit::ok);
}

TEST_F(CliFiles, BudgetExceededExitCode)
{
    const std::string o5 = construct("o5.poset", {"organ", "5"});
    const std::string a5 = construct("a5.poset", {"antichain", "5"});
    EXPECT_EQ(run({"--budget", "0", "forces", o5, a5}).code, cli::Exit::budget);
}

TEST(Cli, ConstructText)
{
    const Outcome o = run({"construct", "organ", "3"});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, serialize_poset(organ(3)));
}

TEST(Cli, ShippedDataFilesParse)
{
    std::size_t seen = 0;
    for (const auto& e : fs::directory_iterator(RAINBOW_DATA_DIR)) {
        if (e.path().extension() == ".poset") {
            EXPECT_NO_THROW(read_poset_file(e.path().string())) << e.path();
        }
        if (e.path().extension() == ".family") {
            EXPECT_NO_THROW(read_family_file(e.path().string())) << e.path();
        }
        ++seen;
    }
    EXPECT_GT(seen, 0u);
}

TEST(Cli, VerifySubset)
{
    const auto j = run_json({"verify-paper", "--quick", "--only", "8", "12"});
    EXPECT_EQ(j["failed"], 0);
    ASSERT_EQ(j["results"].size(), 2u);
    EXPECT_EQ(j["results"][0]["status"], "PASS");
}
