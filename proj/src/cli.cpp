#include "cli.hpp"

#include "rainbow/canonical.hpp"
#include "rainbow/catalog.hpp"
#include "rainbow/constructions.hpp"
#include "rainbow/forcing.hpp"
#include "rainbow/lattice.hpp"
#include "rainbow/poset_io.hpp"
#include "rainbow/suite.hpp"
#include "rainbow/tree_embed.hpp"
#include "rainbow/universal_tree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>

namespace rainbow::cli {
namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct RunConfig {
    std::uint64_t seed = 0;
    std::size_t cap = 7;
    double budget_seconds = 900;
    std::string format = "text";
    unsigned workers = 1;
    bool timing = true;

    bool json() const { return format == "json"; }
    ForcingOptions forcing() const
    {
        return {std::chrono::milliseconds(static_cast<std::int64_t>(budget_seconds * 1000)), workers};
    }
};

unsigned env_workers()
{
    if (const char* v = std::getenv("RAINBOW_WORKERS")) {
        const long n = std::strtol(v, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return 1;
}

/// Results are collected as JSON and rendered either verbatim or as key: value lines.
class Reporter {
public:
    Reporter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out), start_(Clock::now()) {}

    void emit(Json body, const std::string& text)
    {
        if (cfg_.json()) {
            Json doc{{"schema", 1}};
            for (auto& [k, v] : body.items()) doc[k] = v;
            if (cfg_.timing) doc["elapsed_ms"] = elapsed_ms();
            out_ << doc.dump(2) << "\n";
        }
        else {
            out_ << text;
            if (!text.empty() && text.back() != '\n') out_ << "\n";
        }
    }

private:
    std::int64_t elapsed_ms() const
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_).count();
    }

    const RunConfig& cfg_;
    std::ostream& out_;
    Clock::time_point start_;
};

Json coloring_json(const Coloring& c) { return Json(c.values()); }

Json family_json(const SetFamily& f)
{
    Json sets = Json::array();
    for (SetMask s : f.sets()) sets.push_back(format_set(s));
    return sets;
}

std::string family_text(const SetFamily& f)
{
    std::string out;
    for (SetMask s : f.sets()) out += (out.empty() ? "" : " ") + format_set(s);
    return "{" + out + "}";
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::size_t param(const std::vector<std::string>& params, std::size_t i, const std::string& builder)
{
    if (i >= params.size()) fail(ErrorKind::bad_params, builder + " expects " + std::to_string(i + 1) + " numeric parameter(s)");
    std::size_t used = 0;
    const unsigned long v = std::stoul(params[i], &used);
    if (used != params[i].size()) fail(ErrorKind::bad_params, "not a number: " + params[i]);
    return static_cast<std::size_t>(v);
}

Poset construct(const std::string& name, const std::vector<std::string>& params, std::size_t cap)
{
    if (name == "chain") return chain(param(params, 0, name));
    if (name == "antichain") return antichain(param(params, 0, name));
    if (name == "organ") return organ(param(params, 0, name));
    if (name == "harp") return harp(param(params, 0, name));
    if (name == "vee") return vee();
    if (name == "jay") return jay();
    if (name == "diamond") return diamond();
    if (name == "a3-witness") return a3_witness();
    if (name == "downtree") return downtree(param(params, 0, name), param(params, 1, name));
    if (name == "uptree") return uptree(param(params, 0, name), param(params, 1, name));
    if (name == "d-jk") return d_jk(param(params, 0, name), param(params, 1, name));
    if (name == "o-jk") return o_jk(param(params, 0, name), param(params, 1, name));
    if (name == "universal-tree") return universal_tree(param(params, 0, name), std::max<std::size_t>(cap, 100000));
    if (name == "multilevel") {
        std::vector<std::size_t> parts;
        for (std::size_t i = 0; i < params.size(); ++i) parts.push_back(param(params, i, name));
        return complete_multilevel(parts);
    }
    if (name == "blowup") {
        if (params.empty()) fail(ErrorKind::bad_params, "blowup expects a poset file then an element order");
        const Poset p = read_poset_file(params[0]);
        std::vector<Element> order;
        for (std::size_t i = 1; i < params.size(); ++i) order.push_back(param(params, i, name));
        if (order.empty()) {
            order.resize(p.size());
            std::iota(order.begin(), order.end(), Element{0});
        }
        return blowup(p, order);
    }
    fail(ErrorKind::bad_params, "unknown construction: " + name);
}

int exit_for(ErrorKind kind) { return kind == ErrorKind::timeout ? Exit::budget : Exit::usage; }

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    cfg.workers = env_workers();

    CLI::App app{"Rainbow forcing of posets, universal trees and Boolean lattice checks", "rainbow"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--cap", cfg.cap, "poset enumeration cap")->capture_default_str();
    app.add_option("--budget", cfg.budget_seconds, "wall-clock seconds per forcing call")->capture_default_str();
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--workers", cfg.workers, "worker threads (default from RAINBOW_WORKERS)")->capture_default_str();
    app.add_flag("!--no-timing", cfg.timing, "omit elapsed_ms so identical runs give identical bytes");

    int code = Exit::ok;
    Reporter report(cfg, out);

    // construct
    std::string cname;
    std::vector<std::string> cparams;
    auto* cmd_construct = app.add_subcommand("construct", "emit a named poset in the text format");
    cmd_construct->add_option("name", cname, "chain|antichain|organ|harp|vee|jay|diamond|multilevel|downtree|uptree|d-jk|o-jk|a3-witness|universal-tree|blowup")
        ->required();
    cmd_construct->add_option("params", cparams, "numeric parameters");
    cmd_construct->callback([&] {
        const Poset p = construct(cname, cparams, cfg.cap);
        const std::string text = serialize_poset(p);
        report.emit({{"name", cname}, {"size", p.size()}, {"poset", text}}, text);
    });

    // gen
    std::size_t gen_max = 5;
    std::string gen_dir;
    auto* cmd_gen = app.add_subcommand("gen", "write every poset up to a size as files named by canonical hash");
    cmd_gen->add_option("--max-size", gen_max, "largest size")->capture_default_str();
    cmd_gen->add_option("--out", gen_dir, "output directory")->required();
    cmd_gen->callback([&] {
        if (gen_max > cfg.cap) fail(ErrorKind::cap_exceeded, "--max-size exceeds --cap");
        PosetCatalog cat(cfg.cap);
        std::filesystem::create_directories(gen_dir);
        std::ofstream manifest(std::filesystem::path(gen_dir) / "manifest.txt");
        manifest << "# size count\n";
        Json counts = Json::object();
        std::string text;
        for (std::size_t n = 1; n <= gen_max; ++n) {
            const auto& level = cat.by_size(n);
            for (const Poset& p : level) {
                std::ofstream f(std::filesystem::path(gen_dir) / (canonical_key(p).hex_digest() + ".poset"));
                f << serialize_poset(p);
            }
            manifest << n << " " << level.size() << "\n";
            counts[std::to_string(n)] = level.size();
            text += std::to_string(n) + " " + std::to_string(level.size()) + "\n";
        }
        report.emit({{"directory", gen_dir}, {"counts", counts}}, text);
    });

    // forces / minimal
    std::string host_file, pattern_file;
    auto* cmd_forces = app.add_subcommand("forces", "does every proper colouring of the host contain a rainbow pattern copy");
    cmd_forces->add_option("host", host_file)->required()->check(CLI::ExistingFile);
    cmd_forces->add_option("pattern", pattern_file)->required()->check(CLI::ExistingFile);
    cmd_forces->callback([&] {
        const Poset host = read_poset_file(host_file), pattern = read_poset_file(pattern_file);
        const ForcingVerdict v = rainbow_forces(host, pattern, cfg.forcing());
        Json body{{"forces", v.forces}};
        std::string text = "forces: " + yes_no(v.forces) + "\n";
        if (v.refutation) {
            body["refutation"] = coloring_json(*v.refutation);
            text += "refutation:";
            for (Color c : v.refutation->values()) text += " " + std::to_string(c);
            text += "\n";
        }
        report.emit(body, text);
    });

    auto* cmd_minimal = app.add_subcommand("minimal", "does the host force the pattern while no one-element deletion does");
    cmd_minimal->add_option("host", host_file)->required()->check(CLI::ExistingFile);
    cmd_minimal->add_option("pattern", pattern_file)->required()->check(CLI::ExistingFile);
    cmd_minimal->callback([&] {
        const Poset host = read_poset_file(host_file), pattern = read_poset_file(pattern_file);
        const auto opt = cfg.forcing();
        const bool f = forces(host, pattern, opt);
        Json still = Json::array();
        if (f) {
            for (Element x = 0; x < host.size(); ++x) {
                if (forces(delete_element(host, x), pattern, opt)) still.push_back(host.label(x).empty() ? std::to_string(x) : host.label(x));
            }
        }
        const bool minimal = f && still.empty();
        std::string text = "forces: " + yes_no(f) + "\nminimal: " + yes_no(minimal) + "\n";
        if (!still.empty()) {
            text += "still forcing after deleting:";
            for (const auto& s : still) text += " " + s.get<std::string>();
            text += "\n";
        }
        report.emit({{"forces", f}, {"minimal", minimal}, {"forcing_deletions", still}}, text);
    });

    // search-m / m-value
    std::size_t max_size = 6;
    auto* cmd_search = app.add_subcommand("search-m", "all minimal forcing posets of the pattern up to a size");
    cmd_search->add_option("pattern", pattern_file)->required()->check(CLI::ExistingFile);
    cmd_search->add_option("--max-size", max_size, "size bound")->capture_default_str();
    cmd_search->callback([&] {
        const Poset pattern = read_poset_file(pattern_file);
        PosetCatalog cat(cfg.cap);
        const auto found = search_M(pattern, max_size, cat, cfg.forcing());
        Json list = Json::array();
        std::string text = "found " + std::to_string(found.size()) + " poset(s) up to size " + std::to_string(max_size) + "\n";
        for (const Poset& p : found) {
            list.push_back(serialize_poset(p));
            text += serialize_poset(p);
        }
        report.emit({{"max_size", max_size}, {"count", found.size()}, {"posets", list}}, text);
    });

    auto* cmd_m = app.add_subcommand("m-value", "least size of a poset forcing the pattern, bracketed beyond the cap");
    cmd_m->add_option("pattern", pattern_file)->required()->check(CLI::ExistingFile);
    cmd_m->callback([&] {
        const Poset pattern = read_poset_file(pattern_file);
        PosetCatalog cat(cfg.cap);
        const MValue m = m_value(pattern, cat, cfg.forcing());
        Json body{{"lower", m.lower}, {"upper", m.upper}, {"exact", m.exact}};
        std::string text = m.exact ? "m = " + std::to_string(m.lower) + "\n" : "m in [" + std::to_string(m.lower) + ", " + std::to_string(m.upper) + "]\n";
        if (m.witness) {
            body["witness"] = serialize_poset(*m.witness);
            text += serialize_poset(*m.witness);
        }
        report.emit(body, text);
    });

    // embed
    std::string tree_file;
    std::size_t embed_k = 0;
    bool exhaustive = false;
    auto* cmd_embed = app.add_subcommand("embed", "embed a tree poset rainbow into T^k under a proper colouring");
    cmd_embed->add_option("--tree", tree_file)->required()->check(CLI::ExistingFile);
    cmd_embed->add_option("--k", embed_k, "universal tree parameter (default: tree size)");
    cmd_embed->add_option("--seed", cfg.seed, "colouring seed");
    cmd_embed->add_flag("--exhaustive", exhaustive, "try every proper colouring of T^k");
    cmd_embed->callback([&] {
        const Poset t = read_poset_file(tree_file);
        const std::size_t k = embed_k ? embed_k : t.size();
        const UniversalTree host = universal_tree_structure(k, std::max<std::size_t>(100000, cfg.cap));
        const Poset hp = host.poset();
        if (exhaustive) {
            std::size_t tried = 0, verified = 0;
            for_each_proper_coloring(hp, [&](const Coloring& col) {
                ++tried;
                if (verify_certificate(hp, col, t, embed_universal(t, host, col))) ++verified;
                return true;
            });
            const bool all = tried == verified;
            if (!all) code = Exit::property_failed;
            report.emit({{"k", k}, {"colorings", tried}, {"verified", verified}, {"all_verified", all}},
                        "colourings: " + std::to_string(tried) + "\nverified: " + std::to_string(verified) + "\n");
            return;
        }
        std::mt19937_64 rng(cfg.seed);
        const Coloring col = random_proper_coloring(hp, rng);
        const EmbeddingCertificate cert = embed_universal(t, host, col);
        const bool ok = verify_certificate(hp, col, t, cert);
        if (!ok) code = Exit::property_failed;
        Json map = Json::array();
        std::string text;
        for (Element x = 0; x < t.size(); ++x) {
            map.push_back({{"pattern", x}, {"host", cert.map[x]}, {"color", cert.colors[x]}});
            text += std::to_string(x) + " -> " + std::to_string(cert.map[x]) + " (" + std::to_string(cert.colors[x]) + ")\n";
        }
        text += "verified: " + yes_no(ok) + "\n";
        report.emit({{"k", k}, {"host_size", host.size()}, {"certificate", map}, {"verified", ok}}, text);
    });

    // lattice commands
    std::string family_file;
    auto* cmd_lubell = app.add_subcommand("lubell", "Lubell mass of a family");
    cmd_lubell->add_option("family", family_file)->required()->check(CLI::ExistingFile);
    cmd_lubell->callback([&] {
        const SetFamily f = read_family_file(family_file);
        const std::string v = to_string(lubell_mass(f));
        report.emit({{"value", v}}, v);
    });

    std::size_t sig_n = 0, sig_k = 0;
    auto* cmd_sigma = app.add_subcommand("sigma", "total size of the k largest layers of B_n");
    cmd_sigma->add_option("n", sig_n)->required();
    cmd_sigma->add_option("k", sig_k)->required();
    cmd_sigma->callback([&] {
        const auto v = sigma(sig_n, sig_k);
        report.emit({{"value", v}}, std::to_string(v));
    });

    std::size_t la_n = 0;
    std::vector<std::string> la_patterns;
    auto* cmd_la = app.add_subcommand("la-star", "largest family of B_n with both extremes and no induced copy of any pattern");
    cmd_la->add_option("n", la_n)->required();
    cmd_la->add_option("patterns", la_patterns)->required()->check(CLI::ExistingFile);
    cmd_la->callback([&] {
        std::vector<Poset> ps;
        for (const auto& f : la_patterns) ps.push_back(read_poset_file(f));
        const LaResult r = la_star(la_n, ps);
        report.emit({{"value", r.value}, {"witness", family_json(r.witness)}}, std::to_string(r.value) + "\n" + family_text(r.witness));
    });

    auto* cmd_lar = app.add_subcommand("lar-star", "largest family of B_n with both extremes admitting a colouring with no rainbow copy");
    cmd_lar->add_option("n", la_n)->required();
    cmd_lar->add_option("pattern", pattern_file)->required()->check(CLI::ExistingFile);
    cmd_lar->callback([&] {
        const LaResult r = la_rainbow_star(la_n, read_poset_file(pattern_file), cfg.forcing());
        Json body{{"value", r.value}, {"witness", family_json(r.witness)}};
        if (r.coloring) body["coloring"] = coloring_json(*r.coloring);
        report.emit(body, std::to_string(r.value) + "\n" + family_text(r.witness));
    });

    auto* cmd_minmax = app.add_subcommand("minmax", "partition maximal chains by their first and last hit in the family");
    cmd_minmax->add_option("family", family_file)->required()->check(CLI::ExistingFile);
    cmd_minmax->callback([&] {
        const SetFamily f = read_family_file(family_file);
        const MinMaxReport r = minmax_partition(f);
        if (!r.identity_holds) code = Exit::property_failed;
        Json classes = Json::array();
        for (const auto& [key, cls] : r.classes) {
            classes.push_back({{"min", format_set(key.first)}, {"max", format_set(key.second)}, {"chains", cls.chains}, {"average", to_string(cls.average())}});
        }
        report.emit({{"value", to_string(r.chain_average)},
                     {"lubell", to_string(r.lubell)},
                     {"identity_holds", r.identity_holds},
                     {"chains", r.chain_count},
                     {"minus_chains", r.minus.chains},
                     {"classes", classes}},
                    "chain average: " + to_string(r.chain_average) + "\nlubell: " + to_string(r.lubell) + "\nidentity: " + yes_no(r.identity_holds) +
                        "\nclasses: " + std::to_string(r.classes.size()) + "\nchains meeting at most once: " + std::to_string(r.minus.chains) + "\n");
    });

    // verify-paper
    bool quick = false, full = false;
    std::vector<int> only;
    auto* cmd_verify = app.add_subcommand("verify-paper", "run the acceptance suite and print one line per check");
    auto* quick_flag = cmd_verify->add_flag("--quick", quick, "size-6 searches, skip the slowest construction check");
    cmd_verify->add_flag("--full", full, "every check at full size")->excludes(quick_flag);
    cmd_verify->add_option("--only", only, "run only these check numbers");
    cmd_verify->callback([&] {
        suite::Config sc;
        sc.tier = quick ? suite::Tier::quick : suite::Tier::full;
        sc.seed = cfg.seed;
        sc.workers = cfg.workers;
        sc.budget = cfg.forcing().budget;
        const auto results = suite::run(sc, only, {}, [&](const suite::Result& r) {
            if (!cfg.json()) out << suite::format_line(r) << std::endl;
        });
        Json lines = Json::array();
        std::size_t failed = 0;
        for (const auto& r : results) {
            if (!r.passed) ++failed;
            Json line{{"id", r.id}, {"title", r.title}, {"status", r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL"}, {"detail", r.detail}};
            if (cfg.timing) line["seconds"] = r.seconds;
            lines.push_back(line);
        }
        if (failed) code = Exit::property_failed;
        if (cfg.json()) report.emit({{"tier", quick ? "quick" : "full"}, {"failed", failed}, {"results", lines}}, "");
        else out << (failed ? std::to_string(failed) + " check(s) FAILED" : std::string("all checks passed")) << "\n";
    });

    auto report_error = [&](const std::string& kind, const std::string& message) {
        if (cfg.json()) err << Json{{"schema", 1}, {"error", kind}, {"message", message}}.dump() << "\n";
        else err << "error: " << message << "\n";
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&) {
        out << app.help();
        return Exit::ok;
    }
    catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Exit::ok;
    }
    catch (const CLI::ParseError& e) {
        report_error("UsageError", e.what());
        return Exit::usage;
    }
    catch (const Error& e) {
        report_error(to_string(e.kind()), e.what());
        return exit_for(e.kind());
    }
    catch (const std::exception& e) {
        report_error("Error", e.what());
        return Exit::usage;
    }
    return code;
}

int run(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace rainbow::cli
