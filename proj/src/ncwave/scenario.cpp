#include "scenario.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <variant>
#include <vector>

#include "error.hpp"

namespace ncwave {

namespace {

// The format is a small subset of TOML: `key = value` pairs, [table] and
// [[array-of-tables]] headers, '#' comments, values that are numbers,
// booleans, double-quoted strings or (possibly multi-line) numeric arrays.

using Value = std::variant<double, bool, std::string, std::vector<double>>;

struct Entry {
    Value value;
    std::size_t line;
};

struct Table {
    std::map<std::string, Entry> entries;
    std::size_t line = 0;
};

struct Document {
    Table root;
    std::map<std::string, Table> tables;
    std::map<std::string, std::vector<Table>> arrays;
};

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

bool parse_number(const std::string& tok, double& out) {
    std::string t = tok;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty()) return false;
    const auto r = std::from_chars(t.data(), t.data() + t.size(), out);
    return r.ec == std::errc() && r.ptr == t.data() + t.size();
}

Value parse_value(const std::string& raw, std::size_t line, const std::string& key) {
    const std::string v = trim(raw);
    if (v.empty()) throw ParseError("missing value", line, key);
    if (v == "true") return true;
    if (v == "false") return false;
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"') throw ParseError("unterminated string", line, key);
        return v.substr(1, v.size() - 2);
    }
    if (v.front() == '[') {
        if (v.back() != ']') throw ParseError("unterminated array", line, key);
        std::vector<double> out;
        std::stringstream ss(v.substr(1, v.size() - 2));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string t = trim(item);
            if (t.empty()) {
                if (ss.eof()) break;  // trailing comma
                throw ParseError("empty array element", line, key);
            }
            double d;
            if (!parse_number(t, d)) throw ParseError("array element '" + t + "' is not a number", line, key);
            out.push_back(d);
        }
        return out;
    }
    double d;
    if (!parse_number(v, d)) throw ParseError("cannot parse value '" + v + "'", line, key);
    return d;
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
    return true;
}

Document parse_document(const std::string& text) {
    Document doc;
    Table* cur = &doc.root;
    std::string cur_name;
    std::istringstream in(text);
    std::string line;
    std::size_t ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        std::string s = trim(strip_comment(line));
        if (s.empty()) continue;
        if (s.rfind("[[", 0) == 0) {
            if (s.size() < 5 || s.substr(s.size() - 2) != "]]")
                throw ParseError("malformed array-of-tables header", ln, s);
            const std::string name = trim(s.substr(2, s.size() - 4));
            if (!valid_key(name)) throw ParseError("invalid table name", ln, name);
            auto& vec = doc.arrays[name];
            vec.push_back(Table{{}, ln});
            cur = &vec.back();
            cur_name = name;
            continue;
        }
        if (s.front() == '[') {
            if (s.back() != ']') throw ParseError("malformed table header", ln, s);
            const std::string name = trim(s.substr(1, s.size() - 2));
            if (!valid_key(name)) throw ParseError("invalid table name", ln, name);
            if (doc.tables.count(name)) throw ParseError("duplicate table", ln, name);
            cur = &doc.tables[name];
            cur->line = ln;
            cur_name = name;
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", ln, s);
        const std::string key = trim(s.substr(0, eq));
        if (!valid_key(key)) throw ParseError("invalid key", ln, key);
        std::string val = trim(s.substr(eq + 1));
        const std::size_t start = ln;
        if (!val.empty() && val.front() == '[') {
            while (val.back() != ']') {
                if (!std::getline(in, line)) throw ParseError("unterminated array", start, key);
                ++ln;
                val += " " + trim(strip_comment(line));
                val = trim(val);
            }
        }
        const std::string full = cur_name.empty() ? key : cur_name + "." + key;
        if (cur->entries.count(key)) throw ParseError("duplicate key", start, full);
        cur->entries[key] = Entry{parse_value(val, start, full), start};
    }
    return doc;
}

// Typed, consumption-tracked access to one table.
class Reader {
public:
    Reader(const Table& t, std::string prefix) : t_(t), prefix_(std::move(prefix)) {}

    bool has(const std::string& k) const { return t_.entries.count(k) != 0; }

    double number(const std::string& k, double fallback, bool required = false) {
        const Entry* e = find(k, required);
        if (!e) return fallback;
        if (!std::holds_alternative<double>(e->value)) throw ParseError("expected a number", e->line, name(k));
        return std::get<double>(e->value);
    }

    std::size_t count(const std::string& k, std::size_t fallback) {
        const Entry* e = find(k, false);
        if (!e) return fallback;
        if (!std::holds_alternative<double>(e->value)) throw ParseError("expected an integer", e->line, name(k));
        const double d = std::get<double>(e->value);
        if (d < 0 || d != static_cast<double>(static_cast<std::size_t>(d)))
            throw ParseError("expected a non-negative integer", e->line, name(k));
        return static_cast<std::size_t>(d);
    }

    bool boolean(const std::string& k, bool fallback) {
        const Entry* e = find(k, false);
        if (!e) return fallback;
        if (!std::holds_alternative<bool>(e->value)) throw ParseError("expected true or false", e->line, name(k));
        return std::get<bool>(e->value);
    }

    std::string string(const std::string& k, const std::string& fallback) {
        const Entry* e = find(k, false);
        if (!e) return fallback;
        if (!std::holds_alternative<std::string>(e->value)) throw ParseError("expected a string", e->line, name(k));
        return std::get<std::string>(e->value);
    }

    std::vector<double> array(const std::string& k, bool required) {
        const Entry* e = find(k, required);
        if (!e) return {};
        if (!std::holds_alternative<std::vector<double>>(e->value))
            throw ParseError("expected an array of numbers", e->line, name(k));
        return std::get<std::vector<double>>(e->value);
    }

    std::size_t line(const std::string& k) const {
        auto it = t_.entries.find(k);
        return it == t_.entries.end() ? t_.line : it->second.line;
    }
    std::string name(const std::string& k) const { return prefix_.empty() ? k : prefix_ + "." + k; }

    void finish() const {
        for (const auto& [k, e] : t_.entries)
            if (!used_.count(k)) throw ParseError("unknown key", e.line, name(k));
    }

private:
    const Entry* find(const std::string& k, bool required) {
        auto it = t_.entries.find(k);
        if (it == t_.entries.end()) {
            if (required) throw ParseError("missing required key", t_.line, name(k));
            return nullptr;
        }
        used_.insert(k);
        return &it->second;
    }

    const Table& t_;
    std::string prefix_;
    std::set<std::string> used_;
};

ComplexMatrix square_from(const std::vector<double>& re, const std::vector<double>& im,
                          std::size_t n, std::size_t line, const std::string& field) {
    if (re.size() != n * n)
        throw ParseError("expected " + std::to_string(n * n) + " entries, got " + std::to_string(re.size()),
                         line, field);
    if (!im.empty() && im.size() != re.size())
        throw ParseError("imaginary part length differs from real part", line, field + "_im");
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < re.size(); ++k)
        m(k / n, k % n) = cplx(re[k], im.empty() ? 0.0 : im[k]);
    return m;
}

void write_double(std::ostringstream& o, double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, r.ptr);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    o << s;
}

void write_array(std::ostringstream& o, const std::vector<double>& v) {
    o << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) o << ", ";
        write_double(o, v[i]);
    }
    o << "]";
}

void write_matrix(std::ostringstream& o, const std::string& key, const ComplexMatrix& m) {
    std::vector<double> re, im;
    bool any_im = false;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
            any_im = any_im || m(r, c).imag() != 0.0;
        }
    o << key << " = ";
    write_array(o, re);
    o << "\n";
    if (any_im) {
        o << key << "_im = ";
        write_array(o, im);
        o << "\n";
    }
}

}  // namespace

ScenarioFile parse_scenario(const std::string& text) {
    const Document doc = parse_document(text);
    ScenarioFile s;
    Reader root(doc.root, "");

    const double schema = root.number("schema", 0, true);
    if (schema != 1.0) throw ParseError("unsupported schema version", root.line("schema"), "schema");
    s.schema = 1;
    s.name = root.string("name", "");

    const std::string mode = root.string("mode", "commutative");
    if (mode == "commutative") s.soliton.mode = FieldMode::commutative;
    else if (mode == "noncommutative") s.soliton.mode = FieldMode::noncommutative;
    else throw ParseError("mode must be \"commutative\" or \"noncommutative\"", root.line("mode"), "mode");

    const std::string method = root.string("method", "gramian");
    if (method == "gramian") s.soliton.method = Method::gramian;
    else if (method == "wronskian") s.soliton.method = Method::wronskian;
    else throw ParseError("method must be \"gramian\" or \"wronskian\"", root.line("method"), "method");

    s.soliton.c1 = root.number("c1", 1.0);
    if (!(s.soliton.c1 > 0.0)) throw ParseError("c1 must be positive", root.line("c1"), "c1");

    for (const auto& [name, t] : doc.tables)
        if (name != "model" && name != "grid" && name != "outputs" && name != "mi")
            throw ParseError("unknown table", t.line, name);
    for (const auto& [name, v] : doc.arrays)
        if (name != "solitons") throw ParseError("unknown array of tables", v.front().line, name);

    if (auto it = doc.tables.find("model"); it != doc.tables.end()) {
        Reader r(it->second, "model");
        s.soliton.params.alpha1 = r.number("alpha1", 0.0);
        s.soliton.params.alpha2 = r.number("alpha2", 0.0);
        s.soliton.params.gamma = r.number("gamma", 0.0);
        r.finish();
    }

    const std::size_t m = s.soliton.dim();
    if (auto it = doc.arrays.find("solitons"); it != doc.arrays.end()) {
        for (const Table& t : it->second) {
            Reader r(t, "solitons");
            s.soliton.lambdas.emplace_back(r.number("lambda_re", 0.0, true), r.number("lambda_im", 0.0, true));
            if (s.soliton.method == Method::wronskian) {
                const auto re = r.array("polarization", true);
                const auto im = r.array("polarization_im", false);
                s.soliton.polarizations.push_back(
                    square_from(re, im, m, r.line("polarization"), "solitons.polarization"));
            }
            r.finish();
        }
    }
    if (s.soliton.lambdas.empty()) throw ParseError("at least one [[solitons]] entry is required", 0, "solitons");
    if (s.soliton.lambdas.size() > 3)
        throw ParseError("at most three solitons are supported", doc.arrays.at("solitons")[3].line,
                         "solitons");

    const std::size_t N = 2 * m * s.soliton.n();
    if (s.soliton.method == Method::gramian) {
        const auto re = root.array("Q", true);
        const auto im = root.array("Q_im", false);
        s.soliton.Q = square_from(re, im, N, root.line("Q"), "Q");
    } else {
        if (root.has("Q")) throw ParseError("Q is not used by the wronskian method", root.line("Q"), "Q");
        s.soliton.Q = ComplexMatrix(N, N);
    }

    if (auto it = doc.tables.find("grid"); it != doc.tables.end()) {
        Reader r(it->second, "grid");
        s.grid.x_min = r.number("x_min", s.grid.x_min);
        s.grid.x_max = r.number("x_max", s.grid.x_max);
        s.grid.nx = r.count("nx", s.grid.nx);
        s.grid.t_min = r.number("t_min", s.grid.t_min);
        s.grid.t_max = r.number("t_max", s.grid.t_max);
        s.grid.nt = r.count("nt", s.grid.nt);
        if (s.grid.nx < 2) throw ParseError("nx must be at least 2", r.line("nx"), "grid.nx");
        if (s.grid.nt < 2) throw ParseError("nt must be at least 2", r.line("nt"), "grid.nt");
        if (!(s.grid.x_max > s.grid.x_min)) throw ParseError("x_max must exceed x_min", r.line("x_max"), "grid.x_max");
        if (!(s.grid.t_max > s.grid.t_min)) throw ParseError("t_max must exceed t_min", r.line("t_max"), "grid.t_max");
        r.finish();
    }

    if (auto it = doc.tables.find("outputs"); it != doc.tables.end()) {
        Reader r(it->second, "outputs");
        s.outputs.fields = r.boolean("fields", s.outputs.fields);
        s.outputs.residuals = r.boolean("residuals", s.outputs.residuals);
        s.outputs.mi = r.boolean("mi", s.outputs.mi);
        r.finish();
        if (s.outputs.residuals && (s.grid.nx < 9 || s.grid.nt < 9))
            throw ParseError("residuals need at least 9 grid points per axis", r.line("residuals"),
                             "outputs.residuals");
    }

    if (auto it = doc.tables.find("mi"); it != doc.tables.end()) {
        Reader r(it->second, "mi");
        s.mi.c = r.number("c", s.mi.c);
        s.mi.k_max = r.number("k_max", s.mi.k_max);
        s.mi.samples = r.count("samples", s.mi.samples);
        if (!(s.mi.k_max > 0.0)) throw ParseError("k_max must be positive", r.line("k_max"), "mi.k_max");
        if (s.mi.samples < 100) throw ParseError("samples must be at least 100", r.line("samples"), "mi.samples");
        r.finish();
    }

    root.finish();
    return s;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open scenario file '" + path + "'", 0, "path");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

std::string serialize_scenario(const ScenarioFile& s) {
    std::ostringstream o;
    o << "schema = 1\n";
    if (!s.name.empty()) o << "name = \"" << s.name << "\"\n";
    o << "mode = \"" << (s.soliton.mode == FieldMode::commutative ? "commutative" : "noncommutative") << "\"\n";
    o << "method = \"" << (s.soliton.method == Method::gramian ? "gramian" : "wronskian") << "\"\n";
    o << "c1 = ";
    write_double(o, s.soliton.c1);
    o << "\n";
    if (s.soliton.method == Method::gramian) write_matrix(o, "Q", s.soliton.Q);

    o << "\n[model]\nalpha1 = ";
    write_double(o, s.soliton.params.alpha1);
    o << "\nalpha2 = ";
    write_double(o, s.soliton.params.alpha2);
    o << "\ngamma = ";
    write_double(o, s.soliton.params.gamma);
    o << "\n";

    for (std::size_t j = 0; j < s.soliton.n(); ++j) {
        o << "\n[[solitons]]\nlambda_re = ";
        write_double(o, s.soliton.lambdas[j].real());
        o << "\nlambda_im = ";
        write_double(o, s.soliton.lambdas[j].imag());
        o << "\n";
        if (s.soliton.method == Method::wronskian) write_matrix(o, "polarization", s.soliton.polarizations[j]);
    }

    o << "\n[grid]\nx_min = ";
    write_double(o, s.grid.x_min);
    o << "\nx_max = ";
    write_double(o, s.grid.x_max);
    o << "\nnx = " << s.grid.nx << "\nt_min = ";
    write_double(o, s.grid.t_min);
    o << "\nt_max = ";
    write_double(o, s.grid.t_max);
    o << "\nnt = " << s.grid.nt << "\n";

    o << "\n[outputs]\nfields = " << (s.outputs.fields ? "true" : "false")
      << "\nresiduals = " << (s.outputs.residuals ? "true" : "false")
      << "\nmi = " << (s.outputs.mi ? "true" : "false") << "\n";

    o << "\n[mi]\nc = ";
    write_double(o, s.mi.c);
    o << "\nk_max = ";
    write_double(o, s.mi.k_max);
    o << "\nsamples = " << s.mi.samples << "\n";
    return o.str();
}

}  // namespace ncwave
