#include "conekit/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace ck = conekit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitInconclusive = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("no such file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ck::ReactionNetwork load_network(const std::string& path) {
    ck::ParseResult parsed = ck::parse_network(read_file(path));
    for (const auto& w : parsed.warnings) std::cerr << path << ": warning: " << w << "\n";
    return parsed.network;
}

ck::QVec parse_vector_flag(const std::string& text) {
    std::string body = text;
    if (!body.empty() && body.front() == '[') body = body.substr(1);
    if (!body.empty() && body.back() == ']') body.pop_back();
    std::vector<std::string> parts;
    std::string cur;
    for (char c : body) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return ck::vec_from_strings(parts);
}

std::string chain_text(const std::vector<ck::TraceStep>& chain) {
    std::string out;
    for (size_t i = 0; i < chain.size(); ++i) {
        if (i) out += " -> ";
        out += ck::vec_to_string(chain[i].vec);
    }
    return out;
}

void print_report_text(const ck::ReactionNetwork& net, const ck::AnalysisReport& report,
                       std::ostream& os) {
    std::string verdict = ck::verdict_name(report.verdict);
    for (auto& c : verdict) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    os << ck::question_name(report.question) << ": " << verdict;
    if (const auto* fig = std::get_if<ck::FigureFoundCert>(&report.certificate)) {
        os << " (" << (fig->kind == ck::FigureKind::Cone ? "cone with " : "ball with ")
           << fig->figure.size()
           << (fig->kind == ck::FigureKind::Cone ? " generators)" : " vertices)") << "\n";
        for (const auto& g : fig->figure) os << "  " << ck::vec_to_string(g) << "\n";
    } else if (const auto* ray = std::get_if<ck::UnboundedRayCert>(&report.certificate)) {
        os << " (unbounded ray, alpha=" << ck::rat_to_string(ray->scale) << ")\n";
        os << "  chain: " << chain_text(ray->chain) << "\n";
    } else if (const auto* abs = std::get_if<ck::ReactionAbsorbedCert>(&report.certificate)) {
        os << " (reaction " << ck::vec_to_string(net.reactions[abs->reaction].gamma)
           << " absorbed)\n";
        os << "  " << ck::vec_to_string(abs->absorbed) << " =";
        for (const auto& [gen, coeff] : abs->combination)
            os << " + " << ck::rat_to_string(coeff) << "*" << ck::vec_to_string(gen);
        os << "\n";
    } else {
        const auto& inc = std::get<ck::InconclusiveCert>(report.certificate);
        os << " (no determination after " << inc.iterations << " iterations; figure has "
           << inc.figure.size() << " vectors)\n";
    }
    if (report.start) os << "  start: " << ck::vec_to_string(*report.start) << "\n";
    if (!report.annotations.empty()) {
        os << "  annotations:";
        for (const auto& a : report.annotations) os << " " << ck::annotation_name(a);
        os << "\n";
    }
}

struct AnalyzeOptions {
    std::string path;
    bool monotone = false;
    bool non_expansive = false;
    bool both = false;
    std::string output = "text";
    size_t max_iterations = 50;
    unsigned long snap_denominator = 12;
    std::string snap_distance = "1/1000000";
    std::string start;
};

int run_analyze(const AnalyzeOptions& opt) {
    ck::ReactionNetwork net = load_network(opt.path);
    ck::AnalysisConfig config;
    config.saturate.max_iterations = opt.max_iterations;
    config.saturate.snap_max_denominator = opt.snap_denominator;
    config.saturate.snap_max_distance = ck::rat_from_string(opt.snap_distance);
    if (!opt.start.empty()) {
        ck::QVec v = parse_vector_flag(opt.start);
        if (v.size() != net.species_count())
            throw std::invalid_argument("--start dimension does not match the network");
        config.start_override = std::move(v);
    }
    std::vector<ck::Question> questions;
    if (opt.both || (!opt.monotone && !opt.non_expansive)) {
        questions = {ck::Question::NonExpansive, ck::Question::Monotone};
    } else {
        if (opt.non_expansive) questions.push_back(ck::Question::NonExpansive);
        if (opt.monotone) questions.push_back(ck::Question::Monotone);
    }
    std::vector<ck::AnalysisReport> reports;
    for (ck::Question q : questions) {
        ck::AnalysisReport rep = q == ck::Question::NonExpansive
                                     ? ck::analyze_nonexpansive(net, config)
                                     : ck::analyze_monotone(net, config);
        reports.push_back(ck::annotate_strength(std::move(rep), net));
    }
    if (opt.output == "json") {
        ck::ojson out;
        out["reports"] = ck::ojson::array();
        for (const auto& r : reports) out["reports"].push_back(ck::json_of_report(r));
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : reports) print_report_text(net, r, std::cout);
    }
    for (const auto& r : reports)
        if (r.verdict == ck::Verdict::Inconclusive) return kExitInconclusive;
    return kExitOk;
}

struct DualizeOptions {
    std::string path;
    std::string cone_path;
    std::string output = "text";
};

int run_dualize(const DualizeOptions& opt) {
    ck::ReactionNetwork net = load_network(opt.path);
    ck::ojson parsed = ck::ojson::parse(read_file(opt.cone_path));
    std::vector<ck::QVec> columns = ck::columns_of_json(parsed);
    if (columns.empty()) throw std::invalid_argument("figure file has no columns");
    for (const auto& c : columns)
        if (c.size() != net.species_count())
            throw std::invalid_argument("figure columns do not match the species count");

    // A symmetric column set is a norm-ball vertex list, anything else a cone.
    ck::BallRep as_ball{net.species_count(), columns};
    bool is_ball = as_ball.is_symmetric();

    auto refuse = [&](ck::FigureKind kind) {
        auto violations = ck::closure_check(columns, kind, net);
        if (violations.empty()) return false;
        std::cerr << "figure is not certified for this network; closure violations:\n";
        for (const auto& v : violations)
            std::cerr << "  from " << ck::vec_to_string(columns[v.figure_index]) << " via "
                      << (v.reaction >= 0 ? ck::vec_to_string(net.reactions[v.reaction].gamma)
                                          : std::string("negation"))
                      << " escapes at " << ck::vec_to_string(v.produced) << "\n";
        return true;
    };

    ck::ojson json_out;
    std::ostringstream text;
    if (is_ball) {
        if (refuse(ck::FigureKind::Ball)) return kExitInputError;
        ck::BallTransfer t = ck::dual_transfer(net, as_ball);
        text << "dual network:\n" << ck::render(t.dual_net);
        text << "polar ball vertices:\n";
        for (const auto& v : t.polar.vertices) text << "  " << ck::vec_to_string(v) << "\n";
        text << "transferred ball vertices:\n";
        for (const auto& v : t.transferred.vertices) text << "  " << ck::vec_to_string(v) << "\n";
        text << "verification: closure check passed\n";
        json_out["dual_network"] = ck::render(t.dual_net);
        json_out["figure_kind"] = "ball";
        json_out["polar"] = ck::json_of_columns(t.polar.vertices);
        json_out["transferred"] = ck::json_of_columns(t.transferred.vertices);
    } else {
        if (refuse(ck::FigureKind::Cone)) return kExitInputError;
        ck::ConeRep cone{net.species_count(), columns};
        ck::ConeTransfer t = ck::dual_transfer(net, cone);
        text << "dual network:\n" << ck::render(t.dual_net);
        text << "dual cone generators:\n";
        for (const auto& v : t.dual_cone_rep.generators) text << "  " << ck::vec_to_string(v) << "\n";
        text << "transferred cone generators:\n";
        for (const auto& v : t.transferred.generators) text << "  " << ck::vec_to_string(v) << "\n";
        text << "verification: closure check passed\n";
        json_out["dual_network"] = ck::render(t.dual_net);
        json_out["figure_kind"] = "cone";
        json_out["dual_cone"] = ck::json_of_columns(t.dual_cone_rep.generators);
        json_out["transferred"] = ck::json_of_columns(t.transferred.generators);
    }
    json_out["verification"] = "passed";
    if (opt.output == "json")
        std::cout << json_out.dump(2) << "\n";
    else
        std::cout << text.str();
    return kExitOk;
}

struct GrowOptions {
    std::string path;
    std::string range = "-2..2";
    std::string output = "text";
    size_t max_iterations = 10;
    size_t cap = 96;
};

int run_grow(const GrowOptions& opt) {
    ck::ReactionNetwork seed = load_network(opt.path);
    size_t sep = opt.range.find("..");
    if (sep == std::string::npos) throw std::invalid_argument("--range expects a..b");
    long lo = std::stol(opt.range.substr(0, sep));
    long hi = std::stol(opt.range.substr(sep + 2));
    ck::AnalysisConfig config;
    config.saturate.max_iterations = opt.max_iterations;
    config.max_grow_candidates = opt.cap;
    std::vector<ck::GrowStep> steps;
    try {
        steps = ck::grow_search(seed, lo, hi, config);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        ck::AnalysisReport rep = ck::analyze_monotone(seed, config);
        print_report_text(seed, rep, std::cerr);
        return kExitInputError;
    }
    if (opt.output == "json") {
        ck::ojson out;
        out["accepted"] = ck::ojson::array();
        for (const auto& s : steps) {
            ck::ojson entry;
            entry["network"] = ck::render(s.net);
            entry["certificate"] = ck::json_of_certificate(s.certificate);
            out["accepted"].push_back(std::move(entry));
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (size_t i = 0; i < steps.size(); ++i) {
            std::cout << (i == 0 ? "seed" : "accepted") << " ("
                      << steps[i].net.reaction_count() << " reactions):\n";
            std::istringstream lines(ck::render(steps[i].net));
            std::string line;
            while (std::getline(lines, line)) std::cout << "  " << line << "\n";
            if (const auto* fig = std::get_if<ck::FigureFoundCert>(&steps[i].certificate)) {
                std::cout << "  figure:";
                for (const auto& g : fig->figure) std::cout << " " << ck::vec_to_string(g);
                std::cout << "\n";
            }
        }
        std::cout << "total accepted extensions: " << steps.size() - 1 << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reaction network monotonicity and non-expansivity certificates"};
    app.require_subcommand(1);

    AnalyzeOptions a;
    CLI::App* analyze = app.add_subcommand("analyze", "decide the cone/norm questions");
    analyze->add_option("file", a.path, "network file")->required();
    analyze->add_flag("--monotone", a.monotone, "ask the monotonicity question");
    analyze->add_flag("--non-expansive", a.non_expansive, "ask the non-expansivity question");
    analyze->add_flag("--both", a.both, "ask both questions (default)");
    analyze->add_option("--output", a.output, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--max-iterations", a.max_iterations, "saturation pass cap");
    analyze->add_option("--snap-denominator", a.snap_denominator, "rational snap denominator cap");
    analyze->add_option("--snap-distance", a.snap_distance, "rational snap distance, p/q");
    analyze->add_option("--start", a.start, "starting vector override, \"[p/q,...]\"");

    DualizeOptions d;
    CLI::App* dualize = app.add_subcommand("dualize", "transfer a certified figure to the dual network");
    dualize->add_option("file", d.path, "network file")->required();
    dualize->add_option("--cone", d.cone_path, "figure file (JSON array of columns)")->required();
    dualize->add_option("--output", d.output, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    GrowOptions g;
    CLI::App* grow = app.add_subcommand("grow", "greedily grow a monotone network");
    grow->add_option("file", g.path, "seed network file")->required();
    grow->add_option("--range", g.range, "complex coefficient range a..b");
    grow->add_option("--output", g.output, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    grow->add_option("--max-iterations", g.max_iterations, "saturation pass cap");
    grow->add_option("--cap", g.cap, "candidate examination budget");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*analyze) return run_analyze(a);
        if (*dualize) return run_dualize(d);
        if (*grow) return run_grow(g);
    } catch (const ck::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
