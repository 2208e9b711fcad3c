#pragma once
// File formats: score CSV (score,label[,logit]), calibrator model files,
// reliability CSV, and atomic write-then-rename output. All numbers are
// serialized with std::to_chars shortest round-trip form and parsed with
// std::from_chars, so serialization is locale-independent and lossless.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "ptcal/calibrate.hpp"
#include "ptcal/core.hpp"

namespace ptcal {

// ---------------------------------------------------------------------------
// Number formatting / parsing

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_size(std::size_t v) { return std::to_string(v); }

inline double parse_double(std::string_view sv, const std::string& what) {
  double out = 0.0;
  const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), out);
  if (res.ec != std::errc{} || res.ptr != sv.data() + sv.size()) {
    throw error("invalid " + what + ": '" + std::string(sv) + "'");
  }
  return out;
}

inline long long parse_int(std::string_view sv, const std::string& what) {
  long long out = 0;
  const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), out);
  if (res.ec != std::errc{} || res.ptr != sv.data() + sv.size()) {
    throw error("invalid " + what + ": '" + std::string(sv) + "'");
  }
  return out;
}

inline std::uint64_t parse_u64(std::string_view sv, const std::string& what) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), out);
  if (res.ec != std::errc{} || res.ptr != sv.data() + sv.size()) {
    throw error("invalid " + what + ": '" + std::string(sv) + "'");
  }
  return out;
}

inline std::vector<std::string_view> split_view(std::string_view s,
                                                char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Whole-file helpers

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write to <path>.tmp then rename, so readers never observe partial output.
inline void write_file_atomic(const std::string& path,
                              const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw error("cannot write file: " + tmp);
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw error("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw error("cannot rename " + tmp + " to " + path + ": " +
                      ec.message());
}

// Split into lines; accepts LF and CRLF, drops the trailing newline's empty
// remainder but preserves interior empty lines.
inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n') {
      std::string line = text.substr(start, i - start);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
      start = i + 1;
    }
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

// ---------------------------------------------------------------------------
// Score CSV: header `score,label` or `score,label,logit`; `#` comment lines
// and blank lines are skipped; physical line numbers appear in diagnostics.

inline Dataset load_csv(const std::string& path) {
  const std::string text = read_file(path);
  const std::vector<std::string> lines = split_lines(text);

  Dataset out;
  bool header_seen = false;
  bool has_logit = false;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::string& line = lines[li];
    const std::string loc = path + ":" + std::to_string(li + 1);
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line == "score,label") {
        has_logit = false;
      } else if (line == "score,label,logit") {
        has_logit = true;
      } else {
        throw error(loc + ": bad header, expected 'score,label[,logit]'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_view(line, ',');
    const std::size_t expected = has_logit ? 3 : 2;
    if (fields.size() != expected) {
      throw error(loc + ": expected " + std::to_string(expected) +
                  " fields, got " + std::to_string(fields.size()));
    }
    try {
      const double score = parse_double(fields[0], "score");
      const long long label = parse_int(fields[1], "label");
      if (label != 0 && label != 1) {
        throw error("label must be 0 or 1, got " + std::to_string(label));
      }
      std::optional<double> lg;
      if (has_logit) lg = parse_double(fields[2], "logit");
      out.push_back(make_sample(score, static_cast<int>(label), lg));
    } catch (const error& e) {
      throw error(loc + ": " + e.what());
    }
  }
  if (!header_seen) throw error(path + ": bad header, file has no data");
  return out;
}

// Canonical form: optional `# `-prefixed comment lines, exact header, one row
// per sample with shortest round-trip numbers, LF line endings. The logit
// column is present iff every sample carries a logit.
inline std::string csv_to_text(const Dataset& data,
                               const std::vector<std::string>& comments = {}) {
  bool all_logits = !data.empty();
  for (const auto& s : data) {
    if (!s.logit) {
      all_logits = false;
      break;
    }
  }
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  out += all_logits ? "score,label,logit\n" : "score,label\n";
  for (const auto& s : data) {
    out += format_double(s.score.value());
    out += ',';
    out += std::to_string(s.label);
    if (all_logits) {
      out += ',';
      out += format_double(*s.logit);
    }
    out += '\n';
  }
  return out;
}

inline void write_csv(const std::string& path, const Dataset& data,
                      const std::vector<std::string>& comments = {}) {
  write_file_atomic(path, csv_to_text(data, comments));
}

// ---------------------------------------------------------------------------
// Model files: `# ptcal-model v1` magic comment, then keyword lines.

inline constexpr std::string_view kModelMagic = "ptcal-model v1";

namespace detail {

inline void append_binning_body(std::string& out, const BinningModel& m) {
  out += "strategy " + bin_strategy_name(m.strategy) + "\n";
  out += "bins " + std::to_string(m.values.size()) + "\n";
  out += "edges";
  for (const double e : m.edges) out += " " + format_double(e);
  out += "\nvalues";
  for (const double v : m.values) out += " " + format_double(v);
  out += "\n";
}

}  // namespace detail

inline std::string model_to_text(const CalibratorModel& model,
                                 const std::vector<std::string>& comments = {}) {
  validate_model(model);
  std::string out = "# " + std::string(kModelMagic) + "\n";
  for (const auto& c : comments) out += "# " + c + "\n";
  out += "method " + method_name(method_of(model)) + "\n";
  std::visit(
      [&out](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PlattModel>) {
          out += "a " + format_double(m.a) + "\n";
          out += "b " + format_double(m.b) + "\n";
        } else if constexpr (std::is_same_v<T, IsotonicModel>) {
          out += "breakpoints " + std::to_string(m.x.size()) + "\n";
          for (std::size_t i = 0; i < m.x.size(); ++i) {
            out += format_double(m.x[i]) + " " + format_double(m.y[i]) + "\n";
          }
        } else if constexpr (std::is_same_v<T, BinningModel>) {
          detail::append_binning_body(out, m);
        } else if constexpr (std::is_same_v<T, TemperatureModel>) {
          out += "t " + format_double(m.t) + "\n";
        } else {
          out += "a " + format_double(m.platt.a) + "\n";
          out += "b " + format_double(m.platt.b) + "\n";
          detail::append_binning_body(out, m.binning);
        }
      },
      model);
  return out;
}

namespace detail {

struct KvLines {
  std::vector<std::pair<std::string, std::string>> kv;  // key -> rest of line
  std::size_t pos = 0;

  const std::string& expect(const std::string& key) {
    if (pos >= kv.size() || kv[pos].first != key) {
      throw error("invalid model file: expected '" + key + "' line");
    }
    return kv[pos++].second;
  }
  bool done() const { return pos >= kv.size(); }
};

inline BinningModel parse_binning_body(KvLines& in) {
  BinningModel m;
  m.strategy = bin_strategy_from_name(in.expect("strategy"));
  const long long nbins = parse_int(in.expect("bins"), "bin count");
  if (nbins < 1) throw error("invalid model file: bins must be >= 1");
  const auto edge_fields = split_view(in.expect("edges"), ' ');
  for (const auto f : edge_fields) {
    m.edges.push_back(parse_double(f, "edge"));
  }
  const auto value_fields = split_view(in.expect("values"), ' ');
  for (const auto f : value_fields) {
    m.values.push_back(parse_double(f, "bin value"));
  }
  if (m.values.size() != static_cast<std::size_t>(nbins)) {
    throw error("invalid model file: bin count mismatch");
  }
  return m;
}

}  // namespace detail

inline CalibratorModel model_from_text(const std::string& text) {
  detail::KvLines in;
  for (const std::string& line : split_lines(text)) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t sp = line.find(' ');
    if (sp == std::string::npos) {
      throw error("invalid model file: malformed line '" + line + "'");
    }
    in.kv.emplace_back(line.substr(0, sp), line.substr(sp + 1));
  }
  const Method method = method_from_name(in.expect("method"));

  CalibratorModel model;
  switch (method) {
    case Method::platt: {
      PlattModel m;
      m.a = parse_double(in.expect("a"), "platt a");
      m.b = parse_double(in.expect("b"), "platt b");
      model = m;
      break;
    }
    case Method::isotonic: {
      IsotonicModel m;
      const long long n = parse_int(in.expect("breakpoints"),
                                    "breakpoint count");
      for (long long i = 0; i < n; ++i) {
        if (in.done()) throw error("invalid model file: missing breakpoints");
        m.x.push_back(parse_double(in.kv[in.pos].first, "breakpoint x"));
        m.y.push_back(parse_double(in.kv[in.pos].second, "breakpoint y"));
        ++in.pos;
      }
      model = m;
      break;
    }
    case Method::binning:
      model = detail::parse_binning_body(in);
      break;
    case Method::temperature: {
      TemperatureModel m;
      m.t = parse_double(in.expect("t"), "temperature");
      model = m;
      break;
    }
    case Method::binning_platt: {
      BinningWithPlattModel m;
      m.platt.a = parse_double(in.expect("a"), "platt a");
      m.platt.b = parse_double(in.expect("b"), "platt b");
      m.binning = detail::parse_binning_body(in);
      model = m;
      break;
    }
  }
  if (!in.done()) throw error("invalid model file: trailing content");
  validate_model(model);
  return model;
}

inline CalibratorModel load_model(const std::string& path) {
  try {
    return model_from_text(read_file(path));
  } catch (const error& e) {
    throw error(path + ": " + e.what());
  }
}

inline void write_model(const std::string& path, const CalibratorModel& model,
                        const std::vector<std::string>& comments = {}) {
  write_file_atomic(path, model_to_text(model, comments));
}

}  // namespace ptcal
