#include "cmclab/config.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cmclab/error.hpp"

namespace cmclab {

namespace {

// Bundled metrics; the files under configs/ mirror these strings.
const std::map<std::string, const char*>& bundled() {
    static const std::map<std::string, const char*> metrics = {
        {"schwarzschild_m1",
         "kind = schwarzschild\n"
         "mass = 1.0\n"},
        {"schwarzschild_m2",
         "kind = schwarzschild\n"
         "mass = 2.0\n"},
        {"dip_metric",
         "kind = analytic\n"
         "mass = 1.0\n"
         "bump = 0.02 1.0 0.15\n"
         "r_min = 0.2\n"
         "r_cutoff = 10000\n"},
        {"dip_metric_nonneg",
         "kind = analytic\n"
         "mass = 1.0\n"
         "shell = 0.18 0.65 0.06\n"
         "r_min = 0.1\n"
         "r_cutoff = 10000\n"},
    };
    return metrics;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& what) {
    std::ostringstream os;
    os << name << ":" << line << ": " << what;
    throw Error(ErrorKind::BadConfig, os.str());
}

std::vector<double> parse_doubles(const std::string& name, std::size_t line,
                                  const std::string& text, std::size_t count);

std::pair<std::vector<double>, std::vector<double>> read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::BadConfig, "cannot open table file: " + path);
    std::vector<double> r, phi;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto v = parse_doubles(path, line_no, line, 2);
        r.push_back(v[0]);
        phi.push_back(v[1]);
    }
    if (r.size() < 200) {
        std::ostringstream os;
        os << path << ": tabulated metrics need >= 200 samples, got " << r.size();
        throw Error(ErrorKind::BadConfig, os.str());
    }
    return {std::move(r), std::move(phi)};
}

double parse_double(const std::string& name, std::size_t line, const std::string& text) {
    std::istringstream in(text);
    double v = 0.0;
    if (!(in >> v)) fail(name, line, "expected a number, got '" + text + "'");
    std::string rest;
    if (in >> rest) fail(name, line, "trailing content '" + rest + "'");
    return v;
}

std::vector<double> parse_doubles(const std::string& name, std::size_t line,
                                  const std::string& text, std::size_t count) {
    std::istringstream in(text);
    std::vector<double> out;
    double v = 0.0;
    while (in >> v) out.push_back(v);
    std::string rest;
    if (!in.eof() && in.fail()) fail(name, line, "expected numbers, got '" + text + "'");
    if (out.size() != count) {
        std::ostringstream os;
        os << "expected " << count << " numbers, got " << out.size();
        fail(name, line, os.str());
    }
    return out;
}

}  // namespace

Metric parse_metric_config(std::istream& in, const std::string& display_name,
                           const std::string& base_dir) {
    std::string kind;
    std::vector<double> masses;
    std::vector<BumpTerm> bumps;
    std::vector<ShellTerm> shells;
    std::string table_path;
    double r_min = 0.0, r_cutoff = 0.0;
    double deriv_step = 0.0, asym_tol = 0.0;
    std::size_t kind_line = 0, table_line = 0;
    std::map<std::string, std::size_t> term_lines;

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(display_name, line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) fail(display_name, line_no, "empty value for '" + key + "'");

        if (key == "kind") {
            if (!kind.empty()) fail(display_name, line_no, "duplicate 'kind'");
            kind = value;
            kind_line = line_no;
        } else if (key == "mass") {
            masses.push_back(parse_double(display_name, line_no, value));
            term_lines.emplace("mass", line_no);
        } else if (key == "bump") {
            const auto v = parse_doubles(display_name, line_no, value, 3);
            bumps.push_back({v[0], v[1], v[2]});
            term_lines.emplace("bump", line_no);
        } else if (key == "shell") {
            const auto v = parse_doubles(display_name, line_no, value, 3);
            shells.push_back({v[0], v[1], v[2]});
            term_lines.emplace("shell", line_no);
        } else if (key == "table") {
            if (!table_path.empty()) fail(display_name, line_no, "duplicate 'table'");
            table_path = value;
            table_line = line_no;
        } else if (key == "r_min") {
            r_min = parse_double(display_name, line_no, value);
        } else if (key == "r_cutoff") {
            r_cutoff = parse_double(display_name, line_no, value);
        } else if (key == "deriv_step") {
            deriv_step = parse_double(display_name, line_no, value);
        } else if (key == "asym_tol") {
            asym_tol = parse_double(display_name, line_no, value);
        } else {
            fail(display_name, line_no, "unknown key '" + key + "'");
        }
    }

    if (kind.empty()) fail(display_name, line_no == 0 ? 1 : line_no, "missing 'kind'");

    const auto forbid = [&](const char* what, bool present) {
        if (present)
            fail(display_name, term_lines.count(what) ? term_lines[what] : kind_line,
                 std::string("key '") + what + "' not allowed for kind " + kind);
    };

    Metric metric = [&] {
        if (kind == "schwarzschild") {
            forbid("bump", !bumps.empty());
            forbid("shell", !shells.empty());
            if (!table_path.empty()) fail(display_name, table_line, "'table' needs kind tabulated");
            if (masses.size() != 1)
                fail(display_name, kind_line, "kind schwarzschild needs exactly one 'mass'");
            return Metric::schwarzschild(masses[0], r_min, r_cutoff);
        }
        if (kind == "analytic") {
            if (!table_path.empty()) fail(display_name, table_line, "'table' needs kind tabulated");
            if (r_min == 0.0 || r_cutoff == 0.0)
                fail(display_name, kind_line, "kind analytic needs r_min and r_cutoff");
            return Metric::analytic(masses, bumps, shells, r_min, r_cutoff);
        }
        if (kind == "tabulated") {
            forbid("mass", !masses.empty());
            forbid("bump", !bumps.empty());
            forbid("shell", !shells.empty());
            if (table_path.empty()) fail(display_name, kind_line, "kind tabulated needs 'table'");
            std::filesystem::path p(table_path);
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            auto [r, phi] = read_table(p.string());
            Metric m = Metric::tabulated(std::move(r), std::move(phi), r_min, r_cutoff);
            m.set_id(p.stem().string());
            return m;
        }
        fail(display_name, kind_line, "unknown kind '" + kind + "'");
    }();

    if (deriv_step != 0.0) {
        if (!(deriv_step > 0.0)) fail(display_name, 1, "deriv_step must be positive");
        metric.set_deriv_step(deriv_step);
    }
    if (asym_tol != 0.0) {
        if (!(asym_tol > 0.0)) fail(display_name, 1, "asym_tol must be positive");
        metric.set_asym_tol(asym_tol);
    }
    return metric;
}

Metric load_metric_table(const std::string& path) {
    auto [r, phi] = read_table(path);
    Metric m = Metric::tabulated(std::move(r), std::move(phi));
    m.set_id(std::filesystem::path(path).stem().string());
    return m;
}

std::vector<std::string> bundled_metric_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : bundled()) names.push_back(name);
    return names;
}

bool is_bundled_metric(const std::string& name) { return bundled().count(name) != 0; }

Metric load_metric(const std::string& path_or_name) {
    const auto it = bundled().find(path_or_name);
    if (it != bundled().end()) {
        std::istringstream in(it->second);
        Metric m = parse_metric_config(in, path_or_name, ".");
        m.set_id(path_or_name);
        return m;
    }
    std::ifstream in(path_or_name);
    if (!in) {
        throw Error(ErrorKind::BadConfig,
                    "no such bundled metric or readable file: " + path_or_name);
    }
    const std::filesystem::path p(path_or_name);
    Metric m = parse_metric_config(in, path_or_name, p.parent_path().string().empty()
                                                         ? "."
                                                         : p.parent_path().string());
    if (m.id() == "schwarzschild" || m.id() == "analytic") m.set_id(p.stem().string());
    return m;
}

}  // namespace cmclab
