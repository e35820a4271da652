#include "topodyn/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace topodyn {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool needs_quotes(const std::string& v) {
    if (v.empty()) return true;
    for (char c : v)
        if (c == ' ' || c == '"' || c == '#' || c == '=') return true;
    return false;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

} // namespace

ConfigTable parse_config(const std::string& text) {
    ConfigTable table;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header at line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError("empty section name at line " + std::to_string(lineno));
            table[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value at line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineno));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
        if (section.empty()) throw ConfigError("key outside any section at line " + std::to_string(lineno));
        if (!table[section].emplace(key, val).second)
            throw ConfigError("duplicate key '" + key + "' at line " + std::to_string(lineno));
    }
    return table;
}

std::string write_config(const ConfigTable& table) {
    std::string out;
    for (const auto& [section, kv] : table) {
        out += "[" + section + "]\n";
        for (const auto& [k, v] : kv) {
            out += k + " = ";
            if (needs_quotes(v))
                out += "\"" + v + "\"";
            else
                out += v;
            out += "\n";
        }
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// system / point configs

void point_to_config(const PointSpec& p, const std::string& prefix, ConfigTable& out) {
    auto& kv = out[prefix];
    if (auto ep = p.as<EventuallyPeriodicPoint>()) {
        kv["kind"] = "eventually-periodic";
        kv["preperiod"] = word_to_string(ep->preperiod);
        kv["period"] = word_to_string(ep->period);
        return;
    }
    if (auto ps = p.as<PrefixStreamPoint>()) {
        kv["kind"] = "prefix";
        std::string s;
        std::int64_t n = static_cast<std::int64_t>(ps->symbols->size()) - ps->offset;
        if (n > 65536) throw ConfigError("prefix stream too long to serialize; use a fixture name");
        for (std::int64_t i = 0; i < n; ++i) s.push_back(static_cast<char>('0' + p.symbol_at(i)));
        kv["symbols"] = s;
        return;
    }
    if (auto tp = p.as<TorusPoint>()) {
        kv["kind"] = "torus";
        std::string s;
        for (std::size_t i = 0; i < tp->coords.size(); ++i) s += (i ? " " : "") + tp->coords[i].str();
        kv["coords"] = s;
        return;
    }
    if (auto wp = p.as<WedgePoint>()) {
        kv["kind"] = "wedge";
        kv["side"] = wp->side == 0 ? "left" : "right";
        point_to_config(*wp->inner, prefix + ".inner", out);
        return;
    }
    auto pp = p.as<ProductPoint>();
    kv["kind"] = "product";
    point_to_config(*pp->left, prefix + ".left", out);
    point_to_config(*pp->right, prefix + ".right", out);
}

PointSpec point_from_config(const ConfigTable& table, const std::string& prefix) {
    auto sec = table.find(prefix);
    if (sec == table.end()) throw ConfigError("missing section [" + prefix + "]");
    const auto& kv = sec->second;
    auto get = [&](const std::string& k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end()) throw ConfigError("missing key '" + k + "' in [" + prefix + "]");
        return it->second;
    };
    const std::string& kind = get("kind");
    if (kind == "eventually-periodic")
        return PointSpec::eventually_periodic(word_from_string(kv.count("preperiod") ? kv.at("preperiod") : ""),
                                              word_from_string(get("period")));
    if (kind == "prefix") {
        std::vector<Sym> syms;
        for (char c : get("symbols")) syms.push_back(static_cast<Sym>(c - '0'));
        return PointSpec::prefix_stream(std::move(syms));
    }
    if (kind == "torus") {
        std::vector<Rat> coords;
        for (const auto& tok : split_ws(get("coords"))) coords.push_back(Rat::from_string(tok));
        return PointSpec::torus(std::move(coords));
    }
    if (kind == "wedge") {
        const std::string& side = get("side");
        if (side != "left" && side != "right") throw ConfigError("wedge side must be left or right");
        return PointSpec::wedge(side == "left" ? 0 : 1, point_from_config(table, prefix + ".inner"));
    }
    if (kind == "product")
        return PointSpec::product(point_from_config(table, prefix + ".left"),
                                  point_from_config(table, prefix + ".right"));
    throw ConfigError("unknown point kind '" + kind + "'");
}

void system_to_config(const SystemSpec& sys, const std::string& prefix, ConfigTable& out) {
    auto& kv = out[prefix];
    if (auto fs = sys.as<FullShiftSys>()) {
        kv["kind"] = "fullshift";
        kv["alphabet"] = std::to_string(fs->alphabet);
        return;
    }
    if (auto sf = sys.as<SftSys>()) {
        kv["kind"] = "sft";
        kv["alphabet"] = std::to_string(sf->alphabet);
        std::string f;
        for (std::size_t i = 0; i < sf->forbidden.size(); ++i)
            f += (i ? " " : "") + word_to_string(sf->forbidden[i]);
        kv["forbidden"] = f;
        return;
    }
    if (auto ds = sys.as<DiffSetSys>()) {
        kv["kind"] = "diffset";
        kv["pset"] = ds->p.name;
        return;
    }
    if (auto rot = sys.as<RotationSys>()) {
        kv["kind"] = "rotation";
        kv["alpha"] = rot->alpha.str();
        return;
    }
    if (auto sk = sys.as<SkewProductSys>()) {
        kv["kind"] = "skew";
        kv["alpha"] = sk->alpha.str();
        return;
    }
    if (sys.as<ProximalCircleSys>()) {
        kv["kind"] = "proximal-circle";
        return;
    }
    if (auto wg = sys.as<WedgeSys>()) {
        kv["kind"] = "wedge";
        system_to_config(*wg->side, prefix + ".side", out);
        point_to_config(*wg->glue, prefix + ".glue", out);
        return;
    }
    auto pr = sys.as<ProductSys>();
    kv["kind"] = "product";
    system_to_config(*pr->left, prefix + ".left", out);
    system_to_config(*pr->right, prefix + ".right", out);
}

SystemSpec system_from_config(const ConfigTable& table, const std::string& prefix) {
    auto sec = table.find(prefix);
    if (sec == table.end()) throw ConfigError("missing section [" + prefix + "]");
    const auto& kv = sec->second;
    auto get = [&](const std::string& k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end()) throw ConfigError("missing key '" + k + "' in [" + prefix + "]");
        return it->second;
    };
    const std::string& kind = get("kind");
    if (kind == "fullshift") return SystemSpec::full_shift(std::stoi(get("alphabet")));
    if (kind == "sft") {
        std::vector<Word> forbidden;
        for (const auto& tok : split_ws(get("forbidden"))) forbidden.push_back(word_from_string(tok));
        return SystemSpec::sft(std::stoi(get("alphabet")), std::move(forbidden));
    }
    if (kind == "diffset") return SystemSpec::diff_set(pspec_by_name(get("pset")));
    // the angle defaults to the golden-mean convergent 610/987
    if (kind == "rotation")
        return SystemSpec::rotation(kv.count("alpha") ? Rat::from_string(kv.at("alpha")) : Rat(610, 987));
    if (kind == "skew")
        return SystemSpec::skew_product(kv.count("alpha") ? Rat::from_string(kv.at("alpha")) : Rat(610, 987));
    if (kind == "proximal-circle") return SystemSpec::proximal_circle();
    if (kind == "wedge")
        return SystemSpec::wedge(system_from_config(table, prefix + ".side"),
                                 point_from_config(table, prefix + ".glue"));
    if (kind == "product")
        return SystemSpec::product(system_from_config(table, prefix + ".left"),
                                   system_from_config(table, prefix + ".right"));
    throw ConfigError("unknown system kind '" + kind + "'");
}

std::string system_to_text(const SystemSpec& sys) {
    ConfigTable t;
    system_to_config(sys, "system", t);
    return write_config(t);
}

SystemSpec system_from_text(const std::string& text) {
    return system_from_config(parse_config(text), "system");
}

// ---------------------------------------------------------------------------
// window sets

std::string windowset_to_csv(const WindowSet& s) {
    std::string out = "horizon," + std::to_string(s.horizon) + "\n";
    for (auto m : s.members) out += std::to_string(m) + "\n";
    return out;
}

WindowSet windowset_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("empty window set file");
    if (line.rfind("horizon,", 0) != 0) throw ConfigError("window set file must start with 'horizon,H'");
    std::int64_t horizon = std::stoll(line.substr(8));
    std::vector<std::int64_t> members;
    while (std::getline(is, line)) {
        line = trim(line);
        if (!line.empty()) members.push_back(std::stoll(line));
    }
    return WindowSet::of(horizon, std::move(members));
}

std::string windowset_to_rle(const WindowSet& s) {
    std::string out = "horizon," + std::to_string(s.horizon) + "\n";
    std::size_t i = 0;
    while (i < s.members.size()) {
        std::size_t j = i;
        while (j + 1 < s.members.size() && s.members[j + 1] == s.members[j] + 1) ++j;
        if (j == i)
            out += std::to_string(s.members[i]) + "\n";
        else
            out += std::to_string(s.members[i]) + "-" + std::to_string(s.members[j]) + "\n";
        i = j + 1;
    }
    return out;
}

WindowSet windowset_from_rle(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("empty window set file");
    if (line.rfind("horizon,", 0) != 0) throw ConfigError("window set file must start with 'horizon,H'");
    std::int64_t horizon = std::stoll(line.substr(8));
    std::vector<std::int64_t> members;
    while (std::getline(is, line)) {
        line = trim(line);
        if (line.empty()) continue;
        auto dash = line.find('-', 1);
        if (dash == std::string::npos) {
            members.push_back(std::stoll(line));
        } else {
            std::int64_t a = std::stoll(line.substr(0, dash));
            std::int64_t b = std::stoll(line.substr(dash + 1));
            for (std::int64_t v = a; v <= b; ++v) members.push_back(v);
        }
    }
    return WindowSet::of(horizon, std::move(members));
}

// ---------------------------------------------------------------------------
// JSON

namespace {

nlohmann::json int_list(const std::vector<std::int64_t>& v) {
    if (v.size() <= 10000) {
        return nlohmann::json{{"encoding", "plain"}, {"values", v}};
    }
    nlohmann::json runs = nlohmann::json::array();
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i;
        while (j + 1 < v.size() && v[j + 1] == v[j] + 1) ++j;
        runs.push_back({v[i], static_cast<std::int64_t>(j - i + 1)});
        i = j + 1;
    }
    return nlohmann::json{{"encoding", "rle"}, {"runs", runs}};
}

nlohmann::json params_json(const SetParams& p) {
    nlohmann::json j;
    j["horizon"] = p.horizon;
    if (p.depth) j["depth"] = p.depth;
    if (p.delta) j["delta"] = p.delta->str();
    if (p.pair_budget) j["pair_budget"] = p.pair_budget;
    return j;
}

} // namespace

nlohmann::json to_json(const WindowSet& s) {
    return {{"horizon", s.horizon}, {"members", int_list(s.members)}};
}

nlohmann::json to_json(const TaggedWindowSet& t) {
    return {{"params", params_json(t.params)}, {"certain", to_json(t.certain)}, {"possible", to_json(t.possible)}};
}

nlohmann::json to_json(const CellSetApprox& a) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : a.cells) cells.push_back(c.describe());
    return {{"params", params_json(a.params)}, {"cells", cells}};
}

nlohmann::json to_json(const DiagnosticVerdict& v) {
    return {{"property", v.property},
            {"verdict", verdict_name(v.verdict)},
            {"witness", v.witness},
            {"params", v.params}};
}

nlohmann::json to_json(const FamilyVerdict& v) {
    nlohmann::json j{{"family", v.family},
                     {"verdict", verdict_name(v.verdict)},
                     {"statistic", v.statistic},
                     {"detail", v.detail}};
    if (v.ip_basis) j["ip_basis"] = *v.ip_basis;
    return j;
}

nlohmann::json to_json(const FamilyTransitivityReport& r) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& pv : r.pairs)
        pairs.push_back({{"u", pv.u}, {"v", pv.v}, {"verdict", to_json(pv.verdict)}});
    return {{"family", family_kind_name(r.family)}, {"aggregate", verdict_name(r.aggregate)},
            {"depth", r.depth},   {"horizon", r.horizon},
            {"probe_horizon", r.probe_horizon}, {"pairs", pairs}};
}

nlohmann::json to_json(const LyapunovReport& r) {
    return {{"L_r", r.l_r.to_double()},
            {"L_r_bar", r.l_r_bar.to_double()},
            {"L_d", r.l_d.to_double()},
            {"L_d_bar", r.l_d_bar.to_double()},
            {"L_mr", r.l_mr.to_double()},
            {"L_mr_bar", r.l_mr_bar.to_double()},
            {"L_md", r.l_md.to_double()},
            {"L_md_bar", r.l_md_bar.to_double()},
            {"exact", {{"L_r", r.l_r.str()},
                       {"L_r_bar", r.l_r_bar.str()},
                       {"L_d", r.l_d.str()},
                       {"L_d_bar", r.l_d_bar.str()},
                       {"L_mr", r.l_mr.str()},
                       {"L_mr_bar", r.l_mr_bar.str()},
                       {"L_md", r.l_md.str()},
                       {"L_md_bar", r.l_md_bar.str()}}},
            {"depth", r.depth},
            {"horizon", r.horizon},
            {"burn_in", r.burn_in},
            {"multi_arity", r.multi_arity},
            {"sample_size", r.sample_size},
            {"certified_relations", r.certified_relations}};
}

nlohmann::json to_json(const ThickSensitivityProfile& p) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [cell, run] : p.max_runs) rows.push_back({{"cell", cell}, {"max_run", run}});
    return {{"params", params_json(p.params)}, {"min_run", p.min_run}, {"profile", rows}};
}

nlohmann::json to_json(const SepProfile& p) {
    return {{"eps", p.eps.str()}, {"counts", p.counts}, {"slope", p.slope}, {"method", p.method}};
}

nlohmann::json to_json(const SeqEntropyEstimate& e) {
    nlohmann::json profiles = nlohmann::json::array();
    for (const auto& p : e.profiles) profiles.push_back(to_json(p));
    return {{"value", e.value}, {"method", e.method}, {"profiles", profiles}};
}

nlohmann::json to_json(const TransitiveCompactReport& r) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : r.points)
        pts.push_back({{"index", p.index}, {"nonempty", p.nonempty}, {"cells", p.cell_count}});
    return {{"verdict", r.verdict}, {"points", pts}, {"params", params_json(r.params)}};
}

nlohmann::json to_json(const NewpropVerification& v) {
    nlohmann::json j = to_json(v.verdict);
    j["trace"] = v.trace;
    return j;
}

// ---------------------------------------------------------------------------
// plot extraction

std::string emit_plot_data(const nlohmann::json& report, const std::string& series) {
    std::ostringstream out;
    if (series == "sep") {
        if (!report.contains("result") || !report["result"].contains("profiles") ||
            report["result"]["profiles"].empty())
            throw MissingSeries("report has no separation profiles");
        const auto& prof = report["result"]["profiles"][0];
        out << "k,log_sep\n";
        int k = 1;
        for (const auto& c : prof["counts"]) {
            out << k << "," << std::log(c.get<double>()) << "\n";
            ++k;
        }
        return out.str();
    }
    if (series == "thick-profile") {
        if (!report.contains("result") || !report["result"].contains("profile"))
            throw MissingSeries("report has no thick-sensitivity profile");
        out << "cell,max_run\n";
        std::size_t i = 0;
        for (const auto& row : report["result"]["profile"]) {
            out << i << "," << row["max_run"].get<std::int64_t>() << "\n";
            ++i;
        }
        return out.str();
    }
    if (series == "lyapunov-sweep") {
        if (!report.contains("result") || !report["result"].contains("sweep"))
            throw MissingSeries("report has no lyapunov sweep");
        out << "horizon,L_d\n";
        for (const auto& row : report["result"]["sweep"])
            out << row["horizon"].get<std::int64_t>() << "," << row["L_d"].get<double>() << "\n";
        return out.str();
    }
    throw MissingSeries("unknown series '" + series + "'");
}

} // namespace topodyn
