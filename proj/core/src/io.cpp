#include "tomo/io.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tomo/error.hpp"

namespace tomo::io {

namespace {

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    std::string s(buf);
    // keep it recognisably floating point
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

void write_value(std::ostream& out, const Json& v, int indent, int depth) {
    const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* nl = indent > 0 ? "\n" : "";
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out << "{}";
                return;
            }
            out << '{' << nl;
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out << ',' << nl;
                first = false;
                out << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
                write_value(out, it.value(), indent, depth + 1);
            }
            out << nl << close_pad << '}';
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out << "[]";
                return;
            }
            out << '[' << nl;
            bool first = true;
            for (const auto& e : v) {
                if (!first) out << ',' << nl;
                first = false;
                out << pad;
                write_value(out, e, indent, depth + 1);
            }
            out << nl << close_pad << ']';
            return;
        }
        case Json::value_t::number_float:
            out << format_double(v.get<double>());
            return;
        default:
            out << v.dump();
            return;
    }
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedInput, what); }

double number(const Json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) malformed(std::string("missing number '") + key + "'");
    return j.at(key).get<double>();
}

Json count_value(double c) {
    if (c == std::floor(c) && std::abs(c) < 9.0e15) return Json(static_cast<std::int64_t>(c));
    return Json(c);
}

}  // namespace

std::string dump(const Json& value, int indent) {
    std::ostringstream out;
    write(out, value, indent);
    return out.str();
}

void write(std::ostream& out, const Json& value, int indent) { write_value(out, value, indent, 0); }

Json parse(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::exception& e) {
        malformed(e.what());
    }
}

Json to_json(const CountsRecord& record) {
    Json counts = Json::object();
    for (std::size_t k = 0; k < 4; ++k) counts[std::string(kOutcomeLabels[k])] = count_value(record.counts[k]);
    return Json{{"setting_id", record.setting_id}, {"shots", count_value(record.shots())}, {"counts", counts}};
}

CountsRecord counts_from_json(const Json& j) {
    if (!j.is_object()) malformed("counts record must be an object");
    if (!j.contains("setting_id") || !j.at("setting_id").is_number_integer())
        malformed("counts record needs an integer setting_id");
    CountsRecord r;
    r.setting_id = j.at("setting_id").get<int>();
    if (!j.contains("counts") || !j.at("counts").is_object()) malformed("counts record needs 'counts'");
    const auto& counts = j.at("counts");
    for (std::size_t k = 0; k < 4; ++k) {
        const std::string label(kOutcomeLabels[k]);
        const double c = counts.contains(label) ? number(counts, label.c_str()) : 0.0;
        if (c < 0.0) malformed("negative count for outcome " + label);
        r.counts[k] = c;
    }
    if (j.contains("shots")) {
        const double shots = number(j, "shots");
        if (std::abs(shots - r.shots()) > 1e-9 * std::max(1.0, shots))
            malformed("shots does not equal the sum of counts for setting " + std::to_string(r.setting_id));
    }
    return r;
}

Json dataset_to_json(std::span<const CountsRecord> records) {
    Json arr = Json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    return arr;
}

Dataset dataset_from_json(const Json& j) {
    if (!j.is_array()) malformed("dataset must be a JSON array");
    Dataset out;
    for (const auto& e : j) out.push_back(counts_from_json(e));
    return out;
}

Json to_json(const Pulse& pulse) {
    return Json{{"ion", pulse.ion}, {"kind", std::string(to_string(pulse.kind))},
                {"theta", pulse.theta}, {"phi", pulse.phi}};
}

Pulse pulse_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) malformed("pulse needs a kind");
    Pulse p;
    p.ion = static_cast<int>(number(j, "ion"));
    if (p.ion != 1 && p.ion != 2) malformed("pulse ion must be 1 or 2");
    try {
        p.kind = parse_pulse_kind(j.at("kind").get<std::string>());
    } catch (const Error& e) {
        malformed(e.what());
    }
    p.theta = number(j, "theta");
    p.phi = number(j, "phi");
    if (p.theta < 0.0) malformed("pulse theta must be >= 0");
    return p;
}

Json pulses_to_json(std::span<const Pulse> pulses) {
    Json arr = Json::array();
    for (const auto& p : pulses) arr.push_back(to_json(p));
    return arr;
}

std::vector<Pulse> pulses_from_json(const Json& j) {
    if (!j.is_array()) malformed("pulse sequence must be a JSON array");
    std::vector<Pulse> out;
    for (const auto& e : j) out.push_back(pulse_from_json(e));
    return out;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json re = Json::array(), im = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json rr = Json::array(), ri = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) {
            rr.push_back(m(i, j).real());
            ri.push_back(m(i, j).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    return Json{{"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im")) malformed("matrix needs 're' and 'im'");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty())
        malformed("matrix parts must be equal-sized arrays");
    const std::size_t n = re.size();
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!re[i].is_array() || !im[i].is_array() || re[i].size() != n || im[i].size() != n)
            malformed("matrix must be square");
        for (std::size_t k = 0; k < n; ++k) {
            if (!re[i][k].is_number() || !im[i][k].is_number()) malformed("matrix entries must be numbers");
            m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
        }
    }
    return m;
}

std::string matrix_to_csv(const ComplexMatrix& m) {
    std::ostringstream out;
    out << "row,col,re,im\n";
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            out << i << ',' << j << ',' << format_double(m(i, j).real()) << ','
                << format_double(m(i, j).imag()) << '\n';
    return out.str();
}

ComplexMatrix matrix_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.rfind("row,col,re,im", 0) != 0) malformed("CSV header must be row,col,re,im");
    std::vector<std::tuple<std::size_t, std::size_t, Complex>> cells;
    std::size_t max_index = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::istringstream row(line);
        std::string a, b, c, d;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c, ',') ||
            !std::getline(row, d))
            malformed("CSV row needs four fields: " + line);
        try {
            const auto i = static_cast<std::size_t>(std::stoul(a));
            const auto k = static_cast<std::size_t>(std::stoul(b));
            cells.emplace_back(i, k, Complex(std::stod(c), std::stod(d)));
            max_index = std::max({max_index, i, k});
        } catch (const std::exception&) {
            malformed("CSV row is not numeric: " + line);
        }
    }
    const std::size_t n = max_index + 1;
    if (cells.size() != n * n) malformed("CSV must list every entry exactly once");
    ComplexMatrix m(n);
    std::vector<bool> seen(n * n, false);
    for (const auto& [i, k, z] : cells) {
        if (seen[i * n + k]) malformed("duplicate CSV entry");
        seen[i * n + k] = true;
        m(i, k) = z;
    }
    return m;
}

Json to_json(const EntanglementReport& r) {
    return Json{{"eof", r.eof},
                {"concurrence", r.concurrence},
                {"ppt_min_eig", r.ppt_min_eig},
                {"ppt_eigenvalues", r.ppt_eigenvalues},
                {"chsh", r.chsh},
                {"beta_m", r.beta_m},
                {"f_m", r.f_m},
                {"phase_undefined", r.phase_undefined}};
}

Json to_json(const BootstrapReport& r) {
    Json q = Json::object();
    for (const auto& [name, s] : r.quantities)
        q[name] = Json{{"mean", s.mean}, {"std", s.std}, {"samples", s.samples}};
    return Json{{"trials", r.trials}, {"failed_trials", r.failed_trials}, {"quantities", q}};
}

std::string format_value_error(double value, double error) {
    if (!std::isfinite(value) || !std::isfinite(error)) return "nan";
    if (!(error > 0.0)) {
        std::ostringstream out;
        out << std::fixed << std::setprecision(3) << value;
        return out.str();
    }
    int decimals = static_cast<int>(-std::floor(std::log10(error)));
    long digit = std::lround(error * std::pow(10.0, decimals));
    if (digit >= 10) {  // e.g. 0.096 rounds up to 0.1
        --decimals;
        digit = std::lround(error * std::pow(10.0, decimals));
    }
    std::ostringstream out;
    if (decimals > 0) {
        out << std::fixed << std::setprecision(decimals) << value << '(' << digit << ')';
    } else {
        out << std::fixed << std::setprecision(0) << value << '('
            << std::lround(error) << ')';
    }
    return out.str();
}

}  // namespace tomo::io
