#include "bec2/output.hpp"

#include <charconv>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

#include "bec2/errors.hpp"
#include "bec2/fft.hpp"

namespace bec2 {

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + p.string());
  return data;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 14695981039346656037ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fnv1a64_hex(const void* data, std::size_t len) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(data, len);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

RunWriter::RunWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void RunWriter::write_bytes(const std::string& relative, const void* data, std::size_t len) {
  const std::filesystem::path target = dir_ / relative;
  if (target.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(target.parent_path(), ec);
    if (ec) throw IoError("cannot create " + target.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + target.string() + " for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
  if (!out) throw IoError("write failed for " + target.string());
  out.close();
  entries_[relative] = {len, fnv1a64_hex(data, len)};
}

void RunWriter::write_text(const std::string& relative, const std::string& content) {
  write_bytes(relative, content.data(), content.size());
}

void RunWriter::write_manifest(const std::string& command, bool complete) {
  Json m;
  m["command"] = command;
  m["complete"] = complete;
  m["tool_version"] = tool_version;
  m["files"] = Json::array();
  for (const auto& [path, entry] : entries_) {
    Json f;
    f["path"] = path;
    f["bytes"] = entry.bytes;
    f["fnv1a64"] = entry.digest;
    m["files"].push_back(std::move(f));
  }
  const std::string text = m.dump(2) + "\n";
  const std::filesystem::path target = dir_ / "manifest.json";
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + target.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + target.string());
}

std::string snapshot_csv(const MatterState& s) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(static_cast<std::size_t>(s.n_points));
  for (int i = 0; i < s.n_points; ++i) {
    rows.push_back({format_double(s.y(i)), format_double(s.psi[0][i].real()),
                    format_double(s.psi[0][i].imag()), format_double(s.psi[1][i].real()),
                    format_double(s.psi[1][i].imag())});
  }
  return csv_table({"y", "re_1", "im_1", "re_2", "im_2"}, rows);
}

void write_snapshot_binary(RunWriter& w, const std::string& base, const MatterState& s) {
  validate_state(s);
  std::vector<double> raw;
  raw.reserve(4 * static_cast<std::size_t>(s.n_points));
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < s.n_points; ++i) {
      raw.push_back(s.psi[j][i].real());
      raw.push_back(s.psi[j][i].imag());
    }
  }
  w.write_bytes(base + ".f64", raw.data(), raw.size() * sizeof(double));
  Json meta;
  meta["n_points"] = s.n_points;
  meta["dy"] = s.dy;
  meta["y0"] = s.y0;
  meta["z"] = s.z;
  meta["dtype"] = "float64";
  meta["layout"] = "component 0 interleaved re,im; then component 1";
  meta["count"] = raw.size();
  w.write_text(base + ".json", meta.dump(2) + "\n");
}

MatterState read_snapshot_binary(const std::filesystem::path& base) {
  std::filesystem::path meta_path = base;
  meta_path += ".json";
  std::filesystem::path raw_path = base;
  raw_path += ".f64";

  Json meta;
  try {
    meta = Json::parse(read_file(meta_path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError("invalid snapshot sidecar " + meta_path.string() + ": " + e.what());
  }
  MatterState s;
  try {
    s.n_points = meta.at("n_points").get<int>();
    s.dy = meta.at("dy").get<double>();
    s.y0 = meta.at("y0").get<double>();
    s.z = meta.at("z").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError("snapshot sidecar " + meta_path.string() + " missing fields: " + e.what());
  }
  const std::string raw = read_file(raw_path);
  const std::size_t expected =
      4 * static_cast<std::size_t>(s.n_points > 0 ? s.n_points : 0) * sizeof(double);
  if (s.n_points <= 0 || raw.size() != expected) {
    throw IoError("snapshot " + raw_path.string() + " has " + std::to_string(raw.size()) +
                  " bytes, expected " + std::to_string(expected));
  }
  std::vector<double> d(raw.size() / sizeof(double));
  std::memcpy(d.data(), raw.data(), raw.size());
  for (int j = 0; j < 2; ++j) {
    s.psi[j].resize(static_cast<std::size_t>(s.n_points));
    for (int i = 0; i < s.n_points; ++i) {
      const std::size_t k = 2 * (static_cast<std::size_t>(j) * s.n_points + i);
      s.psi[j][i] = {d[k], d[k + 1]};
    }
  }
  validate_state(s);
  return s;
}

}  // namespace bec2
