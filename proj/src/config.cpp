#include "conjpair/config.hpp"

#include "conjpair/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace conjpair {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

ConfigValue parse_value(const std::string& raw, int line_no) {
    const std::string v = trim(raw);
    if (v.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty value");
    ConfigValue out;
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw ConfigError("line " + std::to_string(line_no) + ": unterminated string");
        out.kind = ConfigValue::Kind::String;
        out.str = v.substr(1, v.size() - 2);
        return out;
    }
    if (v == "true" || v == "false") {
        out.kind = ConfigValue::Kind::Boolean;
        out.boolean = v == "true";
        return out;
    }
    if (v.front() == '[') {
        if (v.back() != ']')
            throw ConfigError("line " + std::to_string(line_no) + ": unterminated array");
        out.kind = ConfigValue::Kind::NumberList;
        std::istringstream ss(v.substr(1, v.size() - 2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty())
                throw ConfigError("line " + std::to_string(line_no) + ": empty array entry");
            size_t pos = 0;
            double d = 0;
            try {
                d = std::stod(item, &pos);
            } catch (const std::exception&) {
                pos = std::string::npos;
            }
            if (pos != item.size())
                throw ConfigError("line " + std::to_string(line_no) + ": bad array entry '" +
                                  item + "'");
            out.list.push_back(d);
        }
        return out;
    }
    out.kind = ConfigValue::Kind::Number;
    size_t pos = 0;
    try {
        out.num = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line_no) + ": bad value '" + v + "'");
    }
    if (pos != v.size())
        throw ConfigError("line " + std::to_string(line_no) + ": bad value '" + v + "'");
    return out;
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text) {
    ParsedConfig cfg;
    ConfigTable* current = &cfg.root;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            bool repeated = line.rfind("[[", 0) == 0;
            const std::string close = repeated ? "]]" : "]";
            if (line.substr(line.size() - close.size()) != close)
                throw ConfigError("line " + std::to_string(line_no) + ": malformed table header");
            const std::string name =
                trim(line.substr(repeated ? 2 : 1, line.size() - 2 * (repeated ? 2 : 1)));
            if (name.empty())
                throw ConfigError("line " + std::to_string(line_no) + ": empty table name");
            auto& vec = cfg.tables[name];
            if (repeated || vec.empty()) {
                vec.emplace_back();
                vec.back().line = line_no;
            } else {
                throw ConfigError("line " + std::to_string(line_no) + ": table [" + name +
                                  "] defined twice (use [[" + name + "]] for lists)");
            }
            current = &vec.back();
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (current->entries.count(key))
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key +
                              "'");
        current->entries[key] = parse_value(line.substr(eq + 1), line_no);
    }
    return cfg;
}

ParsedConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

// Typed access with consumed-key tracking; leftovers are rejected.
class TableReader {
public:
    TableReader(const ConfigTable& table, std::string name)
        : table_(table), name_(std::move(name)) {}

    bool has(const std::string& key) const { return table_.entries.count(key) > 0; }

    std::string get_string(const std::string& key) {
        return expect(key, ConfigValue::Kind::String).str;
    }
    double get_number(const std::string& key) {
        return expect(key, ConfigValue::Kind::Number).num;
    }
    bool get_bool(const std::string& key) {
        return expect(key, ConfigValue::Kind::Boolean).boolean;
    }
    std::vector<double> get_list(const std::string& key) {
        return expect(key, ConfigValue::Kind::NumberList).list;
    }
    int get_int(const std::string& key) {
        const double v = get_number(key);
        if (v != std::floor(v))
            throw ConfigError(name_ + "." + key + " must be an integer");
        return static_cast<int>(v);
    }
    Vec3 get_vec3(const std::string& key) {
        const auto list = get_list(key);
        if (list.size() != 3) throw ConfigError(name_ + "." + key + " must have 3 entries");
        return Vec3(list[0], list[1], list[2]);
    }

    void finish() {
        for (const auto& [key, value] : table_.entries)
            if (!consumed_.count(key))
                throw ConfigError("unknown key '" + (name_.empty() ? key : name_ + "." + key) +
                                  "'");
    }

private:
    const ConfigValue& expect(const std::string& key, ConfigValue::Kind kind) {
        auto it = table_.entries.find(key);
        if (it == table_.entries.end())
            throw ConfigError("missing key '" + (name_.empty() ? key : name_ + "." + key) + "'");
        consumed_.insert(key);
        if (it->second.kind != kind)
            throw ConfigError("key '" + (name_.empty() ? key : name_ + "." + key) +
                              "' has the wrong type");
        return it->second;
    }

    const ConfigTable& table_;
    std::string name_;
    std::set<std::string> consumed_;
};

int axis_from_string(const std::string& s) {
    if (s == "x1") return 0;
    if (s == "x2") return 1;
    if (s == "x3") return 2;
    throw ConfigError("axis must be one of x1, x2, x3 (got '" + s + "')");
}

WSpec read_wspec(const ConfigTable& table) {
    TableReader r(table, "w");
    const std::string kind = r.get_string("kind");
    WSpec spec;
    if (kind == "coordinate") {
        CoordinateW c;
        c.axis = axis_from_string(r.get_string("axis"));
        if (r.has("offset")) c.offset = r.get_number("offset");
        spec = c;
    } else if (kind == "dist_point") {
        spec = DistToPointW{r.get_vec3("point")};
    } else if (kind == "dist_axis") {
        spec = DistToAxisW{r.get_vec3("point"), r.get_vec3("direction")};
    } else {
        throw ConfigError("w.kind must be coordinate, dist_point or dist_axis (got '" + kind +
                          "')");
    }
    r.finish();
    return spec;
}

GammaSpec read_gamma(const ConfigTable& table) {
    TableReader r(table, "gamma");
    GammaSpec spec;
    const std::string kind = r.get_string("kind");
    if (kind == "constant") {
        spec.kind = GammaSpec::Kind::Constant;
        spec.value = r.get_number("value");
    } else if (kind == "two_phase") {
        spec.kind = GammaSpec::Kind::TwoPhase;
        spec.center = r.get_vec3("center");
        spec.radius = r.get_number("radius");
        spec.inside = r.get_number("inside");
        spec.outside = r.get_number("outside");
    } else if (kind == "absw") {
        spec.kind = GammaSpec::Kind::AbsW;
    } else if (kind == "absw2") {
        spec.kind = GammaSpec::Kind::AbsW2;
    } else {
        throw ConfigError("gamma.kind must be constant, two_phase, absw or absw2 (got '" +
                          kind + "')");
    }
    if (r.has("bound")) spec.bound = r.get_number("bound");
    r.finish();
    return spec;
}

}  // namespace

RunConfig interpret_config(const ParsedConfig& parsed) {
    RunConfig cfg;

    TableReader root(parsed.root, "");
    cfg.domain = domain_from_name(root.get_string("domain"));
    cfg.level = root.get_int("level");
    if (cfg.level < 1) throw ConfigError("level must be >= 1");
    if (root.has("out_dir")) cfg.out_dir = root.get_string("out_dir");
    if (root.has("seed")) cfg.solver.seed = static_cast<std::uint64_t>(root.get_number("seed"));
    root.finish();

    for (const auto& [name, tables] : parsed.tables) {
        if (name == "w") {
            for (const auto& t : tables) cfg.w_list.push_back(read_wspec(t));
            cfg.w = cfg.w_list.front();
        } else if (name == "gamma") {
            for (const auto& t : tables) cfg.gamma_list.push_back(read_gamma(t));
            cfg.gamma = cfg.gamma_list.front();
        } else if (name == "solver") {
            if (tables.size() != 1) throw ConfigError("[solver] given more than once");
            TableReader r(tables.front(), "solver");
            if (r.has("mode")) cfg.solver.mode = mode_from_name(r.get_string("mode"));
            if (r.has("tol")) cfg.solver.tol = r.get_number("tol");
            if (r.has("maxit")) cfg.solver.maxit = r.get_int("maxit");
            if (r.has("cg_tol")) cfg.solver.cg_tol = r.get_number("cg_tol");
            if (r.has("cg_maxit")) cfg.solver.cg_maxit = r.get_int("cg_maxit");
            if (r.has("v0")) {
                cfg.v0 = r.get_string("v0");
                if (cfg.v0 != "default" && cfg.v0 != "w")
                    throw ConfigError("solver.v0 must be 'default' or 'w'");
            }
            r.finish();
            if (!(cfg.solver.tol > 0) || !(cfg.solver.cg_tol > 0))
                throw ConfigError("solver tolerances must be positive");
            if (cfg.solver.maxit < 1) throw ConfigError("solver.maxit must be >= 1");
        } else if (name == "convergence") {
            if (tables.size() != 1) throw ConfigError("[convergence] given more than once");
            TableReader r(tables.front(), "convergence");
            cfg.study_case = r.get_string("case");
            study_case_from_name(cfg.study_case);  // validate early
            if (r.has("levels")) {
                for (double v : r.get_list("levels")) {
                    if (v != std::floor(v) || v < 1)
                        throw ConfigError("convergence.levels must be positive integers");
                    cfg.study_levels.push_back(static_cast<int>(v));
                }
            }
            r.finish();
        } else {
            throw ConfigError("unknown table [" + name + "]");
        }
    }
    return cfg;
}

} // namespace conjpair
