#include "dstruct/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dstruct/classification.hpp"
#include "dstruct/substitution.hpp"

namespace dstruct {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), end);
}

// ---------------------------------------------------------------------------
// Batch parsing.

Branch parse_branch(const json& jb) {
    if (!jb.is_array() || jb.size() != 2)
        throw std::invalid_argument("branch must be [probability, reward]");
    return Branch{jb[0].get<double>(), jb[1].get<double>(), std::nullopt};
}

std::vector<Branch> parse_option(const json& jp, const char* key) {
    if (!jp.contains(key)) throw std::invalid_argument(std::string("missing option ") + key);
    const json& arr = jp.at(key);
    if (!arr.is_array() || arr.empty())
        throw std::invalid_argument(std::string("option ") + key + " must be a nonempty array");
    std::vector<Branch> out;
    for (const json& jb : arr) out.push_back(parse_branch(jb));
    return out;
}

void apply_ambiguity(std::vector<Branch>& branches, const json& jiv, const char* key) {
    if (!jiv.is_array() || jiv.size() != branches.size())
        throw std::invalid_argument(std::string("ambiguous.") + key +
                                    " must list one entry per branch");
    for (std::size_t i = 0; i < branches.size(); ++i) {
        const json& e = jiv[i];
        if (e.is_null()) continue;
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument(std::string("ambiguous.") + key +
                                        " entries must be null or [lo, hi]");
        branches[i].ambiguity = ProbInterval{e[0].get<double>(), e[1].get<double>()};
    }
}

BatchParseResult parse_batch_json(const json& j) {
    BatchParseResult result;
    if (!j.contains("pairs") || !j.at("pairs").is_array()) {
        result.errors.push_back({"file", "top level must contain a \"pairs\" array"});
        return result;
    }
    std::vector<std::string> seen;
    int index = 0;
    for (const json& jp : j.at("pairs")) {
        std::string where = "pairs[" + std::to_string(index) + "]";
        ++index;
        try {
            if (!jp.contains("id") || !jp.at("id").is_string())
                throw std::invalid_argument("missing string id");
            const std::string id = jp.at("id").get<std::string>();
            where = id;
            if (std::find(seen.begin(), seen.end(), id) != seen.end())
                throw std::invalid_argument("duplicate pair id");
            seen.push_back(id);

            auto bx = parse_option(jp, "x");
            auto by = parse_option(jp, "y");
            if (jp.contains("ambiguous")) {
                const json& ja = jp.at("ambiguous");
                if (ja.contains("x")) apply_ambiguity(bx, ja.at("x"), "x");
                if (ja.contains("y")) apply_ambiguity(by, ja.at("y"), "y");
            }
            result.batch.pairs.push_back(
                BatchPair{id, Gamble(std::move(bx)), Gamble(std::move(by))});
        } catch (const std::exception& e) {
            result.errors.push_back({where, e.what()});
        }
    }
    return result;
}

}  // namespace

BatchParseResult parse_batch_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        BatchParseResult r;
        r.errors.push_back({"file", "malformed JSON"});
        return r;
    }
    return parse_batch_json(j);
}

BatchParseResult parse_batch(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        BatchParseResult r;
        r.errors.push_back({"file", "cannot open " + path});
        return r;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_batch_text(ss.str());
}

// ---------------------------------------------------------------------------
// Running.

std::string to_string(ModelPick m) {
    switch (m) {
    case ModelPick::X: return "x";
    case ModelPick::Y: return "y";
    case ModelPick::Indifferent: return "indifferent";
    default: return "split";
    }
}

namespace {

Outcome order_of(double a, double b) {
    const double tol = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(a - b) <= tol) return Outcome::Indifferent;
    return a > b ? Outcome::X : Outcome::Y;
}

ModelPick pick_of(const ChoiceDistribution& d) {
    constexpr double eps = 1e-12;
    if (std::abs(d.x - d.y) <= eps)
        return d.x > d.indifferent + eps ? ModelPick::Split : ModelPick::Indifferent;
    const double lead = std::max(d.x, d.y);
    if (d.indifferent > lead + eps) return ModelPick::Indifferent;
    return d.x > d.y ? ModelPick::X : ModelPick::Y;
}

bool agrees(ModelPick pick, Outcome order) {
    return (pick == ModelPick::X && order == Outcome::X) ||
           (pick == ModelPick::Y && order == Outcome::Y) ||
           (pick == ModelPick::Indifferent && order == Outcome::Indifferent);
}

const UtilityFn& preset_utility() {
    static const UtilityFn u = UtilityFn::power(0.88);
    return u;
}
const WeightFn& preset_weight() {
    static const WeightFn w = WeightFn::inverse_s(0.61);
    return w;
}

}  // namespace

std::vector<PairReport> run_batch(const BatchFile& batch, const SubstitutionScheme& scheme,
                                  const ReductionPolicy& policy, std::uint64_t seed) {
    std::vector<PairReport> reports;
    reports.reserve(batch.pairs.size());
    std::uint64_t index = 0;
    for (const BatchPair& pair : batch.pairs) {
        PairReport r;
        r.id = pair.id;
        r.tree = reduction_tree(pair.x, pair.y, scheme, policy);
        r.paths = enumerate_paths(r.tree, policy);
        r.distribution = choice_distribution(r.tree, policy);
        r.sampled = sample_path(r.tree, policy, seed + index);
        r.sampled_time = deliberation_time(r.sampled, policy.time_params, 1);
        r.time_params = policy.time_params;

        CompensatorySummary& c = r.comp;
        c.ev_x = expected_value(pair.x);
        c.ev_y = expected_value(pair.y);
        c.eu_x = expected_utility(pair.x, preset_utility());
        c.eu_y = expected_utility(pair.y, preset_utility());
        c.pt_x = prospect_value(pair.x, preset_weight(), preset_utility());
        c.pt_y = prospect_value(pair.y, preset_weight(), preset_utility());
        c.ev_order = order_of(c.ev_x, c.ev_y);
        c.eu_order = order_of(c.eu_x, c.eu_y);
        c.pt_order = order_of(c.pt_x, c.pt_y);
        c.model_pick = pick_of(r.distribution);
        c.agrees_ev = agrees(c.model_pick, c.ev_order);
        c.agrees_eu = agrees(c.model_pick, c.eu_order);
        c.agrees_pt = agrees(c.model_pick, c.pt_order);

        reports.push_back(std::move(r));
        ++index;
    }
    return reports;
}

// ---------------------------------------------------------------------------
// JSON serialization (lossless, alphabetically ordered keys).

namespace {

json class_to_json(const StructureClass& c) {
    json j;
    switch (c.kind) {
    case StructureKind::ZeroOrder: j["kind"] = "zero_order"; break;
    case StructureKind::FirstOrder: j["kind"] = "first_order"; break;
    case StructureKind::SecondOrderParallel: j["kind"] = "parallel"; break;
    default: j["kind"] = "crossing"; break;
    }
    if (c.favored) j["favored"] = to_string(*c.favored);
    if (c.tied) j["tied"] = to_string(*c.tied);
    return j;
}

StructureClass class_from_json(const json& j) {
    StructureClass c;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero_order") c.kind = StructureKind::ZeroOrder;
    else if (kind == "first_order") c.kind = StructureKind::FirstOrder;
    else if (kind == "parallel") c.kind = StructureKind::SecondOrderParallel;
    else if (kind == "crossing") c.kind = StructureKind::SecondOrderCrossing;
    else throw std::invalid_argument("bad class kind " + kind);
    if (j.contains("favored"))
        c.favored = j.at("favored").get<std::string>() == "x" ? OptionId::X : OptionId::Y;
    if (j.contains("tied"))
        c.tied = j.at("tied").get<std::string>() == "prob" ? Dimension::Prob : Dimension::Value;
    return c;
}

json outcome_to_json(Outcome o) { return to_string(o); }

Outcome outcome_from_json(const json& j) {
    const std::string s = j.get<std::string>();
    if (s == "x") return Outcome::X;
    if (s == "y") return Outcome::Y;
    if (s == "indifferent") return Outcome::Indifferent;
    throw std::invalid_argument("bad outcome " + s);
}

json state_to_json(const StructureState& s) {
    json j;
    for (OptionId o : {OptionId::X, OptionId::Y}) {
        const OptionState& os = s[o];
        j[to_string(o)] = {{"prob_rank", os.prob_rank},
                           {"value_rank", os.value_rank},
                           {"p", os.p},
                           {"v", os.v}};
    }
    return j;
}

StructureState state_from_json(const json& j) {
    StructureState s;
    for (OptionId o : {OptionId::X, OptionId::Y}) {
        const json& jo = j.at(to_string(o));
        s[o] = OptionState{jo.at("prob_rank").get<int>(), jo.at("value_rank").get<int>(),
                           jo.at("p").get<double>(), jo.at("v").get<double>()};
    }
    return s;
}

json step_kind_to_json(StepKind k) { return to_string(k); }

StepKind step_kind_from_json(const json& j) {
    const std::string s = j.get<std::string>();
    if (s == "substitute") return StepKind::Substitute;
    if (s == "dtau2") return StepKind::Dtau2;
    if (s == "dtau1") return StepKind::Dtau1;
    if (s == "calc") return StepKind::Calc;
    throw std::invalid_argument("bad step kind " + s);
}

StepLabel label_from_json(const json& j) {
    const std::string s = j.get<std::string>();
    if (s == "risk-seeking") return StepLabel::RiskSeeking;
    if (s == "risk-aversion") return StepLabel::RiskAversion;
    if (s == "value-seeking") return StepLabel::ValueSeeking;
    if (s == "value-aversion") return StepLabel::ValueAversion;
    throw std::invalid_argument("bad step label " + s);
}

json trace_to_json(const ReductionTrace& t) {
    json steps = json::array();
    for (const TraceStep& s : t.steps) {
        json js;
        js["kind"] = step_kind_to_json(s.kind);
        if (s.label) js["label"] = to_string(*s.label);
        if (s.resulting_class) js["class"] = class_to_json(*s.resulting_class);
        steps.push_back(js);
    }
    return json{{"steps", steps}, {"outcome", outcome_to_json(t.outcome)}};
}

ReductionTrace trace_from_json(const json& j) {
    ReductionTrace t;
    for (const json& js : j.at("steps")) {
        TraceStep s;
        s.kind = step_kind_from_json(js.at("kind"));
        if (js.contains("label")) s.label = label_from_json(js.at("label"));
        if (js.contains("class")) s.resulting_class = class_from_json(js.at("class"));
        t.steps.push_back(s);
    }
    t.outcome = outcome_from_json(j.at("outcome"));
    return t;
}

json node_to_json(const ReductionNode& n) {
    json j;
    j["class"] = class_to_json(n.cls);
    j["state"] = state_to_json(n.state);
    j["leaf"] = n.leaf;
    if (n.leaf) {
        j["outcome"] = outcome_to_json(n.outcome);
        if (n.used_calc) j["used_calc"] = true;
    }
    if (!n.children.empty()) {
        json edges = json::array();
        for (const auto& e : n.children) {
            json je;
            je["kind"] = step_kind_to_json(e.kind);
            if (e.label) je["label"] = to_string(*e.label);
            je["node"] = node_to_json(e.child());
            edges.push_back(je);
        }
        j["children"] = edges;
    }
    return j;
}

ReductionNode node_from_json(const json& j) {
    ReductionNode n;
    n.cls = class_from_json(j.at("class"));
    n.state = state_from_json(j.at("state"));
    n.leaf = j.at("leaf").get<bool>();
    if (j.contains("outcome")) n.outcome = outcome_from_json(j.at("outcome"));
    if (j.contains("used_calc")) n.used_calc = j.at("used_calc").get<bool>();
    if (j.contains("children")) {
        for (const json& je : j.at("children")) {
            ReductionNode::Edge e;
            e.kind = step_kind_from_json(je.at("kind"));
            if (je.contains("label")) e.label = label_from_json(je.at("label"));
            e.node.push_back(node_from_json(je.at("node")));
            n.children.push_back(std::move(e));
        }
    }
    return n;
}

json tree_to_json(const ReductionTree& t) {
    json j;
    j["entry"] = to_string(t.entry);
    j["ev_x"] = t.ev_x;
    j["ev_y"] = t.ev_y;
    if (t.immediate) j["immediate"] = outcome_to_json(*t.immediate);
    if (t.root) j["root"] = node_to_json(*t.root);
    return j;
}

ReductionTree tree_from_json(const json& j) {
    ReductionTree t;
    const std::string entry = j.at("entry").get<std::string>();
    if (entry == "direct") t.entry = TreeEntry::Direct;
    else if (entry == "collapsed") t.entry = TreeEntry::Collapsed;
    else if (entry == "superiority") t.entry = TreeEntry::Superiority;
    else if (entry == "cancelled") t.entry = TreeEntry::Cancelled;
    else throw std::invalid_argument("bad tree entry " + entry);
    t.ev_x = j.at("ev_x").get<double>();
    t.ev_y = j.at("ev_y").get<double>();
    if (j.contains("immediate")) t.immediate = outcome_from_json(j.at("immediate"));
    if (j.contains("root")) t.root = node_from_json(j.at("root"));
    return t;
}

json report_to_json(const PairReport& r) {
    json j;
    j["id"] = r.id;
    j["tree"] = tree_to_json(r.tree);
    json paths = json::array();
    for (const ReductionPath& p : r.paths)
        paths.push_back(json{{"trace", trace_to_json(p.trace)}, {"weight", p.weight}});
    j["paths"] = paths;
    j["distribution"] = {{"x", r.distribution.x},
                         {"y", r.distribution.y},
                         {"indifferent", r.distribution.indifferent}};
    j["sampled"] = trace_to_json(r.sampled);
    j["sampled_time"] = r.sampled_time;
    j["time_params"] = {r.time_params.t0, r.time_params.t1, r.time_params.t2,
                        r.time_params.t_cal};
    const CompensatorySummary& c = r.comp;
    j["compensatory"] = {
        {"ev", {{"x", c.ev_x}, {"y", c.ev_y}}},
        {"eu", {{"x", c.eu_x}, {"y", c.eu_y}}},
        {"pt", {{"x", c.pt_x}, {"y", c.pt_y}}},
        {"orders",
         {{"ev", outcome_to_json(c.ev_order)},
          {"eu", outcome_to_json(c.eu_order)},
          {"pt", outcome_to_json(c.pt_order)}}},
        {"model_pick", to_string(c.model_pick)},
        {"agreement", {{"ev", c.agrees_ev}, {"eu", c.agrees_eu}, {"pt", c.agrees_pt}}},
    };
    return j;
}

ModelPick pick_from_json(const json& j) {
    const std::string s = j.get<std::string>();
    if (s == "x") return ModelPick::X;
    if (s == "y") return ModelPick::Y;
    if (s == "indifferent") return ModelPick::Indifferent;
    if (s == "split") return ModelPick::Split;
    throw std::invalid_argument("bad model pick " + s);
}

PairReport report_from_json(const json& j) {
    PairReport r;
    r.id = j.at("id").get<std::string>();
    r.tree = tree_from_json(j.at("tree"));
    for (const json& jp : j.at("paths"))
        r.paths.push_back(
            ReductionPath{trace_from_json(jp.at("trace")), jp.at("weight").get<double>()});
    const json& jd = j.at("distribution");
    r.distribution = ChoiceDistribution{jd.at("x").get<double>(), jd.at("y").get<double>(),
                                        jd.at("indifferent").get<double>()};
    r.sampled = trace_from_json(j.at("sampled"));
    r.sampled_time = j.at("sampled_time").get<double>();
    const json& jt = j.at("time_params");
    r.time_params = TimeParams{jt[0].get<double>(), jt[1].get<double>(), jt[2].get<double>(),
                               jt[3].get<double>()};
    const json& jc = j.at("compensatory");
    CompensatorySummary& c = r.comp;
    c.ev_x = jc.at("ev").at("x").get<double>();
    c.ev_y = jc.at("ev").at("y").get<double>();
    c.eu_x = jc.at("eu").at("x").get<double>();
    c.eu_y = jc.at("eu").at("y").get<double>();
    c.pt_x = jc.at("pt").at("x").get<double>();
    c.pt_y = jc.at("pt").at("y").get<double>();
    c.ev_order = outcome_from_json(jc.at("orders").at("ev"));
    c.eu_order = outcome_from_json(jc.at("orders").at("eu"));
    c.pt_order = outcome_from_json(jc.at("orders").at("pt"));
    c.model_pick = pick_from_json(jc.at("model_pick"));
    c.agrees_ev = jc.at("agreement").at("ev").get<bool>();
    c.agrees_eu = jc.at("agreement").at("eu").get<bool>();
    c.agrees_pt = jc.at("agreement").at("pt").get<bool>();
    return r;
}

// ---------------------------------------------------------------------------
// Text renderings.

std::string steps_string(const ReductionTrace& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        if (i) os << ">";
        os << to_string(t.steps[i].kind);
        if (t.steps[i].label) os << "[" << to_string(*t.steps[i].label) << "]";
    }
    return os.str();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string initial_class_string(const ReductionTree& t) {
    if (t.root) return to_string(t.root->cls);
    if (t.immediate && *t.immediate != Outcome::Indifferent)
        return to_string(StructureClass::zero_order(
            *t.immediate == Outcome::X ? OptionId::X : OptionId::Y));
    return "-";
}

std::string render_csv(const std::vector<PairReport>& reports) {
    std::ostringstream os;
    os << "pair_id,path,steps,outcome,weight,dtau2,dtau1,calc,time,class,entry,ev_x,ev_y\n";
    for (const PairReport& r : reports) {
        int index = 0;
        for (const ReductionPath& p : r.paths) {
            const ReductionTrace& t = p.trace;
            os << csv_escape(r.id) << "," << index++ << "," << steps_string(t) << ","
               << to_string(t.outcome) << "," << fmt(p.weight) << "," << t.count(StepKind::Dtau2)
               << "," << t.count(StepKind::Dtau1) << "," << t.count(StepKind::Calc) << ","
               << fmt(deliberation_time(t, r.time_params, 1)) << ","
               << csv_escape(initial_class_string(r.tree)) << "," << to_string(r.tree.entry)
               << "," << fmt(r.comp.ev_x) << "," << fmt(r.comp.ev_y) << "\n";
        }
    }
    return os.str();
}

void render_node(std::ostringstream& os, const ReductionNode& n, const std::string& indent) {
    os << "[" << to_string(n.cls) << "] " << to_string(combined_matrix(n.state));
    if (n.leaf) os << " => " << to_string(n.outcome);
    os << "\n";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        const auto& e = n.children[i];
        const bool last = i + 1 == n.children.size();
        os << indent << (last ? "`-- " : "|-- ") << to_string(e.kind);
        if (e.label) os << "(" << to_string(*e.label) << ")";
        os << " -> ";
        render_node(os, e.child(), indent + (last ? "    " : "|   "));
    }
}

std::string render_table(const std::vector<PairReport>& reports) {
    std::ostringstream os;
    for (const PairReport& r : reports) {
        os << "== pair " << r.id << " ==\n";
        os << "entry: " << to_string(r.tree.entry)
           << "   class: " << initial_class_string(r.tree) << "\n";
        if (r.tree.immediate) {
            os << "verdict: " << to_string(*r.tree.immediate) << " (no reduction needed)\n";
        } else {
            os << "tree:\n  ";
            render_node(os, *r.tree.root, "  ");
        }
        os << "distribution: x=" << fmt(r.distribution.x) << " y=" << fmt(r.distribution.y)
           << " indifferent=" << fmt(r.distribution.indifferent) << "\n";
        os << "sampled: " << to_string(r.sampled) << "   time=" << fmt(r.sampled_time) << "\n";
        const CompensatorySummary& c = r.comp;
        os << "EV: x=" << fmt(c.ev_x) << " y=" << fmt(c.ev_y) << " (" << to_string(c.ev_order)
           << ")   EU: x=" << fmt(c.eu_x) << " y=" << fmt(c.eu_y) << " ("
           << to_string(c.eu_order) << ")   PT: x=" << fmt(c.pt_x) << " y=" << fmt(c.pt_y)
           << " (" << to_string(c.pt_order) << ")\n";
        os << "model pick: " << to_string(c.model_pick) << "   agrees: ev="
           << (c.agrees_ev ? "yes" : "no") << " eu=" << (c.agrees_eu ? "yes" : "no")
           << " pt=" << (c.agrees_pt ? "yes" : "no") << "\n\n";
    }
    return os.str();
}

}  // namespace

std::string render(const std::vector<PairReport>& reports, RenderFormat format) {
    switch (format) {
    case RenderFormat::Csv:
        return render_csv(reports);
    case RenderFormat::Table:
        return render_table(reports);
    default: {
        json j;
        json arr = json::array();
        for (const PairReport& r : reports) arr.push_back(report_to_json(r));
        j["reports"] = arr;
        return j.dump(2) + "\n";
    }
    }
}

std::vector<PairReport> parse_reports(const std::string& json_text) {
    const json j = json::parse(json_text);
    std::vector<PairReport> out;
    for (const json& jr : j.at("reports")) out.push_back(report_from_json(jr));
    return out;
}

}  // namespace dstruct
