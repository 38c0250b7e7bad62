// Copyright 2026 The kcbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kcbs/trial_log_io.h"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "kcbs/config.h"

namespace kcbs {

namespace {

constexpr std::string_view kCsvHeader = "trial,first,second,a1,a2,accepted";
constexpr std::string_view kFormatLine = "kcbs-trial-log v1";
constexpr std::string_view kRejectedKey = "rejected_inits = ";
constexpr std::array<char, 8> kMagic{'K', 'C', 'B', 'S', 'L', 'O', 'G', '1'};
constexpr std::uint64_t kFlushEvery = 1 << 16;

static_assert(std::endian::native == std::endian::little,
              "binary trial logs are written with native little-endian layout");

std::string header_text(const TrialLog& log) {
  std::string text(kFormatLine);
  text += '\n';
  text += kRejectedKey;
  text += std::to_string(log.rejected_inits);
  text += '\n';
  text += config_to_text(log.config);
  return text;
}

// Inverse of header_text. Unprefixed text, one entry per line.
void parse_header(const std::string& text, TrialLog& log) {
  std::istringstream in(text);
  std::string line;
  std::string config;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      first = false;
      if (line != kFormatLine) throw InputError("unrecognised trial log header '" + line + "'");
      continue;
    }
    if (line.starts_with(kRejectedKey)) {
      const std::string value = line.substr(kRejectedKey.size());
      const auto [ptr, ec] =
          std::from_chars(value.data(), value.data() + value.size(), log.rejected_inits);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw InputError("malformed rejected_inits in trial log header");
      }
      continue;
    }
    config += line;
    config += '\n';
  }
  log.config = parse_config(config, "<trial log header>");
}

void check_record(const TrialRecord& r, const std::string& where) {
  if (!is_valid_context(r.context)) {
    throw InputError(where + ": (" + std::to_string(r.context.first) + "," +
                     std::to_string(r.context.second) + ") is not an ordered KCBS context");
  }
  if ((r.a1 != 1 && r.a1 != -1) || (r.a2 != 1 && r.a2 != -1)) {
    throw InputError(where + ": outcomes must be +1 or -1");
  }
}

template <typename T>
bool parse_field(std::string_view& rest, T& value) {
  const auto comma = rest.find(',');
  const std::string_view field = rest.substr(0, comma);
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) return false;
  rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  return comma != std::string_view::npos || rest.empty();
}

template <typename T>
void write_le(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
T read_le(std::istream& in, const char* what) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof value)) {
    throw InputError(std::string("truncated binary trial log (") + what + ")");
  }
  return value;
}

void check_stream(const std::ostream& out, std::uint64_t trial) {
  if (!out) throw InputError("write failed at trial " + std::to_string(trial));
}

}  // namespace

void write_trial_log_csv(std::ostream& out, const TrialLog& log) {
  std::istringstream header(header_text(log));
  for (std::string line; std::getline(header, line);) out << "# " << line << '\n';
  out << kCsvHeader << '\n';
  check_stream(out, 0);

  std::string buffer;
  buffer.reserve(kFlushEvery * 24);
  char field[24];
  auto append = [&](auto value) {
    const auto [ptr, ec] = std::to_chars(field, field + sizeof field, value);
    buffer.append(field, ptr);
  };
  for (const TrialRecord& r : log.records) {
    append(r.trial);
    buffer += ',';
    append(r.context.first);
    buffer += ',';
    append(r.context.second);
    buffer += ',';
    append(static_cast<int>(r.a1));
    buffer += ',';
    append(static_cast<int>(r.a2));
    buffer += ',';
    buffer += r.accepted ? '1' : '0';
    buffer += '\n';
    if (buffer.size() >= kFlushEvery * 16) {
      out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
      check_stream(out, r.trial);
      buffer.clear();
    }
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  check_stream(out, log.records.empty() ? 0 : log.records.back().trial);
}

TrialLog read_trial_log_csv(std::istream& in) {
  TrialLog log;
  std::string header;
  std::string line;
  std::uint64_t line_no = 0;
  bool saw_columns = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.starts_with('#')) {
      header += line.substr(line.starts_with("# ") ? 2 : 1);
      header += '\n';
      continue;
    }
    if (line != kCsvHeader) {
      throw InputError("line " + std::to_string(line_no) + ": expected header '" +
                       std::string(kCsvHeader) + "'");
    }
    saw_columns = true;
    break;
  }
  if (!saw_columns) throw InputError("trial log has no '" + std::string(kCsvHeader) + "' header");
  if (!header.empty()) parse_header(header, log);

  std::uint64_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "row " + std::to_string(row) + " (line " + std::to_string(line_no) + ")";
    std::string_view rest = line;
    TrialRecord r;
    int first = 0, second = 0, a1 = 0, a2 = 0, accepted = 0;
    const bool ok = parse_field(rest, r.trial) && parse_field(rest, first) &&
                    parse_field(rest, second) && parse_field(rest, a1) && parse_field(rest, a2) &&
                    parse_field(rest, accepted) && rest.empty() && line.back() != ',';
    if (!ok) throw InputError(where + ": malformed row '" + line + "'");
    if (accepted != 0 && accepted != 1) throw InputError(where + ": accepted must be 0 or 1");
    r.context = {first, second};
    r.a1 = static_cast<std::int8_t>(a1);
    r.a2 = static_cast<std::int8_t>(a2);
    r.accepted = accepted == 1;
    if (a1 != r.a1 || a2 != r.a2) throw InputError(where + ": outcomes must be +1 or -1");
    check_record(r, where);
    log.records.push_back(r);
  }
  return log;
}

void write_trial_log_binary(std::ostream& out, const TrialLog& log) {
  const std::string header = header_text(log);
  out.write(kMagic.data(), kMagic.size());
  write_le<std::uint64_t>(out, header.size());
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  write_le<std::uint64_t>(out, log.records.size());
  check_stream(out, 0);

  std::string buffer;
  buffer.reserve(kFlushEvery * kBinaryRecordSize);
  for (const TrialRecord& r : log.records) {
    std::array<char, kBinaryRecordSize> bytes{};
    std::memcpy(bytes.data(), &r.trial, sizeof r.trial);
    bytes[8] = static_cast<char>(r.context.first);
    bytes[9] = static_cast<char>(r.context.second);
    bytes[10] = static_cast<char>(r.a1);
    bytes[11] = static_cast<char>(r.a2);
    bytes[12] = r.accepted ? 1 : 0;
    buffer.append(bytes.data(), bytes.size());
    if (buffer.size() >= kFlushEvery * kBinaryRecordSize) {
      out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
      check_stream(out, r.trial);
      buffer.clear();
    }
  }
  out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  check_stream(out, log.records.empty() ? 0 : log.records.back().trial);
}

TrialLog read_trial_log_binary(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw InputError("not a binary kcbs trial log (bad magic)");
  }
  TrialLog log;
  const auto header_size = read_le<std::uint64_t>(in, "header length");
  std::string header(header_size, '\0');
  if (!in.read(header.data(), static_cast<std::streamsize>(header_size))) {
    throw InputError("truncated binary trial log (header)");
  }
  parse_header(header, log);
  const auto count = read_le<std::uint64_t>(in, "record count");
  log.records.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::array<char, kBinaryRecordSize> bytes{};
    if (!in.read(bytes.data(), bytes.size())) {
      throw InputError("truncated binary trial log at record " + std::to_string(i));
    }
    TrialRecord r;
    std::memcpy(&r.trial, bytes.data(), sizeof r.trial);
    r.context = {static_cast<unsigned char>(bytes[8]), static_cast<unsigned char>(bytes[9])};
    r.a1 = static_cast<std::int8_t>(bytes[10]);
    r.a2 = static_cast<std::int8_t>(bytes[11]);
    if (bytes[12] != 0 && bytes[12] != 1) {
      throw InputError("record " + std::to_string(i) + ": accepted must be 0 or 1");
    }
    r.accepted = bytes[12] == 1;
    check_record(r, "record " + std::to_string(i));
    log.records.push_back(r);
  }
  return log;
}

void save_trial_log(const std::filesystem::path& path, const TrialLog& log, LogFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  try {
    if (format == LogFormat::kBinary) {
      write_trial_log_binary(out, log);
    } else {
      write_trial_log_csv(out, log);
    }
    out.flush();
    check_stream(out, log.records.empty() ? 0 : log.records.back().trial);
  } catch (const InputError& err) {
    throw InputError("'" + path.string() + "': " + err.what());
  }
}

TrialLog load_trial_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open trial log '" + path.string() + "'");
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  const bool binary = in.gcount() == 8 && magic == kMagic;
  in.clear();
  in.seekg(0);
  try {
    return binary ? read_trial_log_binary(in) : read_trial_log_csv(in);
  } catch (const InputError& err) {
    throw InputError("'" + path.string() + "': " + err.what());
  }
}

}  // namespace kcbs
