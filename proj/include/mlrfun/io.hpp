#ifndef MLRFUN_IO_HPP
#define MLRFUN_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mlrfun/params.hpp"

namespace mlr {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

struct CurveRow {
    double y;
    double m;
    double abs_err;
};

/// A persisted curve with enough metadata to re-derive it.
struct CurveArtifactRecord {
    int schema_version = kSchemaVersion;
    std::string generator;  // subcommand that produced it
    long alpha_l = 0, alpha_k = 1;
    double beta = 0.0;
    int n = 1;
    std::vector<CurveRow> rows;
    std::string created_at;  // ISO-8601; honors SOURCE_DATE_EPOCH
    std::string tool_version = kToolVersion;
};

/// 17-significant-digit decimal formatting, '.' separator; stable across runs.
std::string format_double(double v);

std::string to_csv(const CurveArtifactRecord& rec);
CurveArtifactRecord csv_to_record(const std::string& text);

std::string to_json(const CurveArtifactRecord& rec);
CurveArtifactRecord json_to_record(const std::string& text);

/// write-temp-then-rename
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// Filename encoding params: m_<l>-<k>_<beta>_<n>.csv (beta printed compactly).
std::string curve_filename(const MLRParams& params, const std::string& ext);

std::string iso_timestamp_now();

/// Content-addressed JSON cache in `dir`; key material is hashed into the
/// filename. Entries with a different schema_version are misses.
class ResultCache {
  public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}
    std::optional<std::string> lookup(const std::string& key) const;
    void store(const std::string& key, const std::string& json_payload) const;
    std::filesystem::path path_for(const std::string& key) const;

  private:
    std::filesystem::path dir_;
};

}  // namespace mlr

#endif
