#include "fitzcalc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace fitzcalc {

namespace {

std::string cell(ExtReal v) {
    if (v.is_pos_inf()) return "inf";
    if (v.is_neg_inf()) return "-inf";
    return format_double(v.value());
}

double parse_double(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad number '" + std::string(s) + "'");
    return v;
}

ExtReal parse_cell(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s == "inf" || s == "+inf") return ExtReal::pos_inf();
    if (s == "-inf") return ExtReal::neg_inf();
    return ExtReal::from_double(parse_double(s));
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= s.size(); ++k)
        if (k == s.size() || s[k] == sep) {
            out.push_back(s.substr(start, k - start));
            start = k + 1;
        }
    return out;
}

std::string axis_text(const Grid1& g) {
    return format_double(g.lo()) + "," + format_double(g.hi()) + "," + std::to_string(g.size());
}

Grid1 parse_axis(std::string_view s) {
    const auto parts = split(s, ',');
    if (parts.size() != 3) throw std::invalid_argument("axis must be lo,hi,n");
    return make_grid(parse_double(parts[0]), parse_double(parts[1]), static_cast<long long>(parse_double(parts[2])));
}

AxisRole axis_role_from(std::string_view s) {
    if (s == "primal") return AxisRole::Primal;
    if (s == "dual") return AxisRole::Dual;
    throw std::invalid_argument("unknown axis role '" + std::string(s) + "'");
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

std::string to_csv(const GridFn2& f) {
    std::string out = "# role=" + std::string(to_string(f.role())) + " axis_a=" + axis_text(f.grid_a()) +
                      " axis_b=" + axis_text(f.grid_b()) + " axis_roles=" + std::string(to_string(f.axis_a())) +
                      "," + std::string(to_string(f.axis_b())) + "\n";
    for (std::size_t i = 0; i < f.rows(); ++i) {
        for (std::size_t j = 0; j < f.cols(); ++j) {
            if (j) out += ',';
            out += cell(f(i, j));
        }
        out += '\n';
    }
    return out;
}

GridFn2 from_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    for (auto l : split(text, '\n'))
        if (!l.empty() && l != "\r") lines.push_back(l);
    if (lines.empty() || lines[0].substr(0, 1) != "#") throw std::invalid_argument("csv: missing header");
    std::optional<Role2> role;
    std::optional<Grid1> a, b;
    std::optional<std::pair<AxisRole, AxisRole>> roles;
    for (auto tok : split(lines[0].substr(1), ' ')) {
        if (tok.empty()) continue;
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("csv header: bad token '" + std::string(tok) + "'");
        const auto key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "role")
            role = role2_from_string(val);
        else if (key == "axis_a")
            a = parse_axis(val);
        else if (key == "axis_b")
            b = parse_axis(val);
        else if (key == "axis_roles") {
            const auto p = split(val, ',');
            if (p.size() != 2) throw std::invalid_argument("csv header: axis_roles needs two entries");
            roles = {axis_role_from(p[0]), axis_role_from(p[1])};
        } else
            throw std::invalid_argument("csv header: unknown key '" + std::string(key) + "'");
    }
    if (!role || !a || !b) throw std::invalid_argument("csv header: need role, axis_a and axis_b");
    if (lines.size() - 1 != a->size())
        throw std::invalid_argument("csv: expected " + std::to_string(a->size()) + " rows, got " +
                                    std::to_string(lines.size() - 1));
    GridFn2 f(*a, *b, *role);
    if (roles) f.set_axis_roles(roles->first, roles->second);
    for (std::size_t i = 0; i < a->size(); ++i) {
        const auto cells = split(lines[i + 1], ',');
        if (cells.size() != b->size())
            throw std::invalid_argument("csv: row " + std::to_string(i) + " has " + std::to_string(cells.size()) +
                                        " values, expected " + std::to_string(b->size()));
        for (std::size_t j = 0; j < cells.size(); ++j) f(i, j) = parse_cell(cells[j]);
    }
    return f;
}

nlohmann::json grid_to_json(const GridFn2& f) {
    nlohmann::json j;
    j["role"] = to_string(f.role());
    j["axis_a"] = {{"lo", f.grid_a().lo()}, {"hi", f.grid_a().hi()}, {"n", f.grid_a().size()}};
    j["axis_b"] = {{"lo", f.grid_b().lo()}, {"hi", f.grid_b().hi()}, {"n", f.grid_b().size()}};
    j["axis_roles"] = {to_string(f.axis_a()), to_string(f.axis_b())};
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < f.rows(); ++i) {
        nlohmann::json r = nlohmann::json::array();
        for (std::size_t jj = 0; jj < f.cols(); ++jj) {
            const ExtReal v = f(i, jj);
            if (v.finite())
                r.push_back(v.value());
            else
                r.push_back(v.is_pos_inf() ? "inf" : "-inf");
        }
        rows.push_back(std::move(r));
    }
    j["values"] = std::move(rows);
    return j;
}

GridFn2 grid_from_json(const nlohmann::json& j) {
    auto axis = [&](const char* k) {
        const auto& a = j.at(k);
        return make_grid(a.at("lo").get<double>(), a.at("hi").get<double>(), a.at("n").get<long long>());
    };
    GridFn2 f(axis("axis_a"), axis("axis_b"), role2_from_string(j.at("role").get<std::string>()));
    if (j.contains("axis_roles"))
        f.set_axis_roles(axis_role_from(j["axis_roles"].at(0).get<std::string>()),
                         axis_role_from(j["axis_roles"].at(1).get<std::string>()));
    const auto& rows = j.at("values");
    if (rows.size() != f.rows()) throw std::invalid_argument("json grid: row count mismatch");
    for (std::size_t i = 0; i < f.rows(); ++i) {
        if (rows[i].size() != f.cols()) throw std::invalid_argument("json grid: column count mismatch");
        for (std::size_t k = 0; k < f.cols(); ++k) {
            const auto& v = rows[i][k];
            f(i, k) = v.is_string() ? parse_cell(v.get<std::string>()) : ExtReal::from_double(v.get<double>());
        }
    }
    return f;
}

Format format_for(const std::filesystem::path& p) {
    const auto ext = p.extension().string();
    if (ext == ".csv") return Format::Csv;
    if (ext == ".json") return Format::Json;
    throw std::invalid_argument("unknown grid format '" + ext + "' (use .csv or .json)");
}

void export_grid(const GridFn2& f, Format fmt, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    if (fmt == Format::Csv)
        os << to_csv(f);
    else
        os << grid_to_json(f).dump() << '\n';
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

GridFn2 import_grid(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    if (format_for(path) == Format::Csv) return from_csv(ss.str());
    return grid_from_json(nlohmann::json::parse(ss.str()));
}

}  // namespace fitzcalc
