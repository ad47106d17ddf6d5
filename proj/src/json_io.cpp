#include "conekit/json_io.hpp"

#include <stdexcept>

namespace conekit {

ojson json_of_vec(const QVec& v) {
    ojson out = ojson::array();
    for (const auto& x : v) out.push_back(rat_to_string(x));
    return out;
}

QVec vec_of_json(const ojson& j) {
    if (!j.is_array()) throw std::invalid_argument("expected a rational vector array");
    QVec v;
    for (const auto& x : j) {
        if (x.is_string())
            v.push_back(rat_from_string(x.get<std::string>()));
        else if (x.is_number_integer())
            v.push_back(Rat(x.get<long>()));
        else
            throw std::invalid_argument("vector entries must be rational strings or integers");
    }
    return v;
}

ojson json_of_columns(const std::vector<QVec>& columns) {
    ojson out = ojson::array();
    for (const auto& c : columns) out.push_back(json_of_vec(c));
    return out;
}

std::vector<QVec> columns_of_json(const ojson& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of columns");
    std::vector<QVec> out;
    for (const auto& c : j) out.push_back(vec_of_json(c));
    return out;
}

namespace {

std::string figure_kind_name(FigureKind k) { return k == FigureKind::Cone ? "cone" : "ball"; }

FigureKind figure_kind_of(const std::string& s) {
    if (s == "cone") return FigureKind::Cone;
    if (s == "ball") return FigureKind::Ball;
    throw std::invalid_argument("unknown figure kind: " + s);
}

OpKind op_kind_of(const std::string& s) {
    if (s == "1") return OpKind::Lower;
    if (s == "2") return OpKind::Raise;
    if (s == "3a") return OpKind::SplitRaise;
    if (s == "3b") return OpKind::SplitLower;
    if (s == "4") return OpKind::Mirror;
    throw std::invalid_argument("unknown operation tag: " + s);
}

ojson json_of_step(const TraceStep& s) {
    ojson out;
    out["vector"] = json_of_vec(s.vec);
    out["parent_index"] = s.parent < 0 ? ojson(nullptr) : ojson(s.parent);
    out["reaction"] = s.reaction < 0 ? ojson(nullptr) : ojson(s.reaction);
    out["op"] = s.op ? ojson(op_kind_name(*s.op)) : ojson(nullptr);
    out["alpha"] = s.alpha ? ojson(rat_to_string(*s.alpha)) : ojson(nullptr);
    return out;
}

TraceStep step_of_json(const ojson& j) {
    TraceStep s;
    s.vec = vec_of_json(j.at("vector"));
    s.parent = j.at("parent_index").is_null() ? -1 : j.at("parent_index").get<long>();
    s.reaction = j.at("reaction").is_null() ? -1 : j.at("reaction").get<long>();
    if (!j.at("op").is_null()) s.op = op_kind_of(j.at("op").get<std::string>());
    if (!j.at("alpha").is_null()) s.alpha = rat_from_string(j.at("alpha").get<std::string>());
    return s;
}

}  // namespace

ojson json_of_certificate(const Certificate& cert) {
    ojson out;
    if (const auto* fig = std::get_if<FigureFoundCert>(&cert)) {
        out["kind"] = "figure_found";
        out["figure_kind"] = figure_kind_name(fig->kind);
        out["figure"] = json_of_columns(fig->figure);
    } else if (const auto* ray = std::get_if<UnboundedRayCert>(&cert)) {
        out["kind"] = "unbounded_ray";
        out["scale"] = rat_to_string(ray->scale);
        ojson trace = ojson::array();
        for (const auto& s : ray->chain) trace.push_back(json_of_step(s));
        out["trace"] = std::move(trace);
    } else if (const auto* abs = std::get_if<ReactionAbsorbedCert>(&cert)) {
        out["kind"] = "reaction_absorbed";
        ojson witness;
        witness["reaction"] = abs->reaction;
        witness["absorbed"] = json_of_vec(abs->absorbed);
        ojson combo = ojson::array();
        for (const auto& [gen, coeff] : abs->combination) {
            ojson term;
            term["generator"] = json_of_vec(gen);
            term["coefficient"] = rat_to_string(coeff);
            combo.push_back(std::move(term));
        }
        witness["combination"] = std::move(combo);
        out["witness"] = std::move(witness);
    } else {
        const auto& inc = std::get<InconclusiveCert>(cert);
        out["kind"] = "inconclusive";
        ojson state;
        state["figure_kind"] = figure_kind_name(inc.kind);
        state["iterations"] = inc.iterations;
        state["node_count"] = inc.node_count;
        state["figure"] = json_of_columns(inc.figure);
        out["state"] = std::move(state);
    }
    return out;
}

Certificate certificate_of_json(const ojson& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "figure_found") {
        FigureFoundCert c;
        c.kind = figure_kind_of(j.at("figure_kind").get<std::string>());
        c.figure = columns_of_json(j.at("figure"));
        return c;
    }
    if (kind == "unbounded_ray") {
        UnboundedRayCert c;
        c.scale = rat_from_string(j.at("scale").get<std::string>());
        for (const auto& s : j.at("trace")) c.chain.push_back(step_of_json(s));
        return c;
    }
    if (kind == "reaction_absorbed") {
        ReactionAbsorbedCert c;
        const auto& w = j.at("witness");
        c.reaction = w.at("reaction").get<size_t>();
        c.absorbed = vec_of_json(w.at("absorbed"));
        for (const auto& term : w.at("combination"))
            c.combination.emplace_back(vec_of_json(term.at("generator")),
                                       rat_from_string(term.at("coefficient").get<std::string>()));
        return c;
    }
    if (kind == "inconclusive") {
        InconclusiveCert c;
        const auto& s = j.at("state");
        c.kind = figure_kind_of(s.at("figure_kind").get<std::string>());
        c.iterations = s.at("iterations").get<size_t>();
        c.node_count = s.at("node_count").get<size_t>();
        c.figure = columns_of_json(s.at("figure"));
        return c;
    }
    throw std::invalid_argument("unknown certificate kind: " + kind);
}

ojson json_of_report(const AnalysisReport& report) {
    ojson out;
    out["question"] = question_name(report.question);
    out["verdict"] = verdict_name(report.verdict);
    if (report.start) out["start_vector"] = json_of_vec(*report.start);
    out["certificate"] = json_of_certificate(report.certificate);
    ojson annotations = ojson::array();
    for (const auto& a : report.annotations) annotations.push_back(annotation_name(a));
    out["annotations"] = std::move(annotations);
    ojson config;
    config["max_iterations"] = report.config.saturate.max_iterations;
    config["snap_max_denominator"] = report.config.saturate.snap_max_denominator;
    config["snap_max_distance"] = rat_to_string(report.config.saturate.snap_max_distance);
    out["config"] = std::move(config);
    return out;
}

AnalysisReport report_of_json(const ojson& j) {
    AnalysisReport report;
    std::string q = j.at("question").get<std::string>();
    report.question = q == "non-expansive" ? Question::NonExpansive : Question::Monotone;
    std::string v = j.at("verdict").get<std::string>();
    if (v == "yes")
        report.verdict = Verdict::Yes;
    else if (v == "no")
        report.verdict = Verdict::No;
    else if (v == "no-for-cones-containing-v")
        report.verdict = Verdict::NoForConesContainingStart;
    else
        report.verdict = Verdict::Inconclusive;
    if (j.contains("start_vector")) report.start = vec_of_json(j.at("start_vector"));
    report.certificate = certificate_of_json(j.at("certificate"));
    for (const auto& a : j.at("annotations")) {
        std::string name = a.get<std::string>();
        for (Annotation ann :
             {Annotation::StronglyConnectedInfluenceGraph, Annotation::StronglyMonotone,
              Annotation::WeaklyContractive, Annotation::Concordant})
            if (annotation_name(ann) == name) report.annotations.insert(ann);
    }
    const auto& config = j.at("config");
    report.config.saturate.max_iterations = config.at("max_iterations").get<size_t>();
    report.config.saturate.snap_max_denominator =
        config.at("snap_max_denominator").get<unsigned long>();
    report.config.saturate.snap_max_distance =
        rat_from_string(config.at("snap_max_distance").get<std::string>());
    return report;
}

bool verify_certificate(const ReactionNetwork& net, const Certificate& cert) {
    if (const auto* fig = std::get_if<FigureFoundCert>(&cert)) {
        return closure_check(fig->figure, fig->kind, net).empty();
    }
    if (const auto* ray = std::get_if<UnboundedRayCert>(&cert)) {
        const auto& chain = ray->chain;
        if (chain.size() < 2 || ray->scale <= 1) return false;
        auto ratio = positive_parallel_ratio(chain.front().vec, chain.back().vec);
        if (!ratio || *ratio != ray->scale) return false;
        for (size_t i = 1; i < chain.size(); ++i) {
            const TraceStep& s = chain[i];
            if (s.parent != static_cast<long>(i) - 1 || !s.op) return false;
            const QVec& parent = chain[i - 1].vec;
            if (*s.op == OpKind::Mirror) {
                if (s.vec != vec_neg(parent)) return false;
                continue;
            }
            if (s.reaction < 0 || static_cast<size_t>(s.reaction) >= net.reaction_count())
                return false;
            bool matched = false;
            for (const auto& res :
                 apply_operation(parent, net.reactions[static_cast<size_t>(s.reaction)])) {
                if (res.kind == *s.op && s.alpha && res.alpha == *s.alpha && res.vec == s.vec)
                    matched = true;
            }
            if (!matched) return false;
        }
        return true;
    }
    if (const auto* abs = std::get_if<ReactionAbsorbedCert>(&cert)) {
        if (abs->reaction >= net.reaction_count()) return false;
        const Reaction& r = net.reactions[abs->reaction];
        bool sign_ok = abs->absorbed == r.gamma ||
                       (r.reversible && abs->absorbed == vec_neg(r.gamma));
        if (!sign_ok) return false;
        if (abs->combination.size() < 2) return false;
        QVec sum(abs->absorbed.size(), Rat(0));
        for (const auto& [gen, coeff] : abs->combination) {
            if (coeff <= 0) return false;
            if (same_ray(gen, abs->absorbed)) return false;
            sum = vec_add(sum, vec_scale(coeff, gen));
        }
        return sum == abs->absorbed;
    }
    return true;  // Inconclusive carries state, nothing to falsify
}

}  // namespace conekit
