#include "mlrfun/io.hpp"

#include <charconv>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mlrfun/errors.hpp"

namespace mlr {

namespace {

double parse_double(const std::string& s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw DomainError("parse error: '" + s + "' is not a number");
    return v;
}

std::string compact_double(double v) {
    std::string s = format_double(v);
    // trim trailing zeros for filename use
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const CurveArtifactRecord& rec) {
    std::ostringstream os;
    os << "# schema_version=" << rec.schema_version << " generator=" << rec.generator
       << " alpha=" << rec.alpha_l << "/" << rec.alpha_k << " beta=" << format_double(rec.beta)
       << " n=" << rec.n << " created_at=" << rec.created_at
       << " tool_version=" << rec.tool_version << "\n";
    os << "y,m,abs_err\n";
    for (const auto& r : rec.rows)
        os << format_double(r.y) << "," << format_double(r.m) << "," << format_double(r.abs_err)
           << "\n";
    return os.str();
}

CurveArtifactRecord csv_to_record(const std::string& text) {
    CurveArtifactRecord rec;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("# schema_version=", 0) != 0)
        throw DomainError("csv_to_record: missing schema header");
    {
        std::istringstream hs(line.substr(2));
        std::string tok;
        while (hs >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "schema_version") rec.schema_version = static_cast<int>(parse_double(val));
            else if (key == "generator") rec.generator = val;
            else if (key == "alpha") {
                auto slash = val.find('/');
                rec.alpha_l = static_cast<long>(parse_double(val.substr(0, slash)));
                rec.alpha_k = static_cast<long>(parse_double(val.substr(slash + 1)));
            } else if (key == "beta") rec.beta = parse_double(val);
            else if (key == "n") rec.n = static_cast<int>(parse_double(val));
            else if (key == "created_at") rec.created_at = val;
            else if (key == "tool_version") rec.tool_version = val;
        }
    }
    if (rec.schema_version != kSchemaVersion)
        throw DomainError("csv_to_record: unknown schema_version " +
                          std::to_string(rec.schema_version));
    if (!std::getline(is, line) || line != "y,m,abs_err")
        throw DomainError("csv_to_record: missing column header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw DomainError("csv_to_record: malformed row '" + line + "'");
        rec.rows.push_back({parse_double(line.substr(0, c1)),
                            parse_double(line.substr(c1 + 1, c2 - c1 - 1)),
                            parse_double(line.substr(c2 + 1))});
    }
    return rec;
}

std::string to_json(const CurveArtifactRecord& rec) {
    nlohmann::ordered_json j;
    j["schema_version"] = rec.schema_version;
    j["generator"] = rec.generator;
    j["params"] = {{"alpha_l", rec.alpha_l},
                   {"alpha_k", rec.alpha_k},
                   {"beta", rec.beta},
                   {"n", rec.n}};
    j["created_at"] = rec.created_at;
    j["tool_version"] = rec.tool_version;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : rec.rows)
        rows.push_back({{"y", r.y}, {"m", r.m}, {"abs_err", r.abs_err}});
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

CurveArtifactRecord json_to_record(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    CurveArtifactRecord rec;
    rec.schema_version = j.at("schema_version").get<int>();
    if (rec.schema_version != kSchemaVersion)
        throw DomainError("json_to_record: unknown schema_version " +
                          std::to_string(rec.schema_version));
    rec.generator = j.at("generator").get<std::string>();
    rec.alpha_l = j.at("params").at("alpha_l").get<long>();
    rec.alpha_k = j.at("params").at("alpha_k").get<long>();
    rec.beta = j.at("params").at("beta").get<double>();
    rec.n = j.at("params").at("n").get<int>();
    rec.created_at = j.at("created_at").get<std::string>();
    rec.tool_version = j.at("tool_version").get<std::string>();
    for (const auto& r : j.at("rows"))
        rec.rows.push_back({r.at("y").get<double>(), r.at("m").get<double>(),
                            r.at("abs_err").get<double>()});
    return rec;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("atomic_write: cannot open " + tmp.string());
        os << content;
        if (!os.flush()) throw Error("atomic_write: write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("read_file: cannot open " + path.string());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::string curve_filename(const MLRParams& p, const std::string& ext) {
    return "m_" + std::to_string(p.alpha.l()) + "-" + std::to_string(p.alpha.k()) + "_" +
           compact_double(p.beta) + "_" + std::to_string(p.n) + "." + ext;
}

std::string iso_timestamp_now() {
    std::time_t t;
    if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(e, nullptr, 10));
    } else {
        t = std::time(nullptr);
    }
    char buf[32];
    std::tm tmv{};
    gmtime_r(&t, &tmv);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tmv);
    return buf;
}

std::filesystem::path ResultCache::path_for(const std::string& key) const {
    // FNV-1a, hex
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return dir_ / (std::string(buf) + ".json");
}

std::optional<std::string> ResultCache::lookup(const std::string& key) const {
    auto p = path_for(key);
    std::error_code ec;
    if (!std::filesystem::exists(p, ec)) return std::nullopt;
    try {
        std::string text = read_file(p);
        auto j = nlohmann::json::parse(text);
        if (j.value("schema_version", -1) != kSchemaVersion) return std::nullopt;
        if (j.value("key", "") != key) return std::nullopt;  // hash collision
        return j.at("payload").dump();
    } catch (...) {
        return std::nullopt;
    }
}

void ResultCache::store(const std::string& key, const std::string& json_payload) const {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["key"] = key;
    j["payload"] = nlohmann::json::parse(json_payload);
    atomic_write(path_for(key), j.dump(2) + "\n");
}

}  // namespace mlr
