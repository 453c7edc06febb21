#include "wehrl/state_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "wehrl/errors.hpp"

namespace wehrl {

namespace {

constexpr double kNormTol = 1e-8;

PureState finish(SpinLabel spin, CVector amps, bool normalize) {
  const double n = amps.norm();
  if (!std::isfinite(n)) throw ParseError("amplitudes are not finite");
  if (n == 0.0) throw ParseError("state vector is zero");
  if (!normalize && std::abs(n - 1.0) > kNormTol)
    throw ParseError("state norm " + format_double(n) + " differs from 1 by more than 1e-8 (use --normalize)");
  return PureState::normalized(spin, std::move(amps));
}

int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, int line, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("cannot parse ") + what + " '" + s + "'", line);
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

PureState parse_state_json(std::string_view text, bool normalize) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!doc.is_object()) throw ParseError("state file must be a JSON object", 1);
  if (!doc.contains("twice_l") || !doc["twice_l"].is_number_integer())
    throw ParseError("missing integer field 'twice_l'");
  if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array())
    throw ParseError("missing array field 'amplitudes'");
  const long long twice = doc["twice_l"].get<long long>();
  if (twice < 0 || twice > 100000) throw ParseError("twice_l out of range: " + std::to_string(twice));
  const SpinLabel spin(static_cast<int>(twice));
  const auto& arr = doc["amplitudes"];
  if (static_cast<long long>(arr.size()) != twice + 1)
    throw ParseError("expected " + std::to_string(twice + 1) + " amplitudes, found " + std::to_string(arr.size()));
  CVector amps(spin.dim());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& p = arr[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw ParseError("amplitude " + std::to_string(i) + " is not a [re, im] pair");
    amps(static_cast<Eigen::Index>(i)) = cplx(p[0].get<double>(), p[1].get<double>());
  }
  return finish(spin, std::move(amps), normalize);
}

PureState parse_state_csv(std::string_view text, bool normalize) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  bool header_seen = false;
  std::optional<SpinLabel> spin;
  std::map<int, cplx> rows;  // twice_m -> amplitude
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_fields(line);
    if (!header_seen) {
      if (f.size() != 4 || f[0] != "l" || f[1] != "m" || f[2] != "re" || f[3] != "im")
        throw ParseError("expected header 'l,m,re,im'", line_no);
      header_seen = true;
      continue;
    }
    if (f.size() != 4) throw ParseError("expected 4 fields, found " + std::to_string(f.size()), line_no);
    SpinLabel l;
    try {
      l = SpinLabel::parse(f[0]);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (spin && !(*spin == l))
      throw ParseError("mixed l values " + spin->to_string() + " and " + l.to_string(), line_no);
    spin = l;
    const double m = parse_number(f[1], line_no, "m");
    const double twice_m = 2.0 * m;
    const int tm = static_cast<int>(std::lround(twice_m));
    if (std::abs(twice_m - tm) > 1e-9 || std::abs(tm) > l.twice() || (l.twice() - tm) % 2 != 0)
      throw ParseError("m = " + f[1] + " is not a valid projection for l = " + l.to_string(), line_no);
    if (rows.count(tm)) throw ParseError("duplicate m = " + f[1], line_no);
    rows[tm] = cplx(parse_number(f[2], line_no, "re"), parse_number(f[3], line_no, "im"));
  }
  if (!header_seen) throw ParseError("empty CSV state file");
  if (!spin) throw ParseError("CSV state file has no amplitude rows");
  if (static_cast<int>(rows.size()) != spin->dim())
    throw ParseError("expected " + std::to_string(spin->dim()) + " rows for l = " + spin->to_string() + ", found " +
                     std::to_string(rows.size()));
  CVector amps(spin->dim());
  for (int k = 0; k < spin->dim(); ++k) amps(k) = rows.at(spin->twice() - 2 * k);
  return finish(*spin, std::move(amps), normalize);
}

PureState parse_state(std::string_view text, StateFormat format, bool normalize) {
  return format == StateFormat::kJson ? parse_state_json(text, normalize) : parse_state_csv(text, normalize);
}

PureState load_state(const std::string& path, bool normalize) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open state file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".json")) return parse_state_json(text, normalize);
  if (ends_with(".csv")) return parse_state_csv(text, normalize);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_state_json(text, normalize);
  return parse_state_csv(text, normalize);
}

std::string format_state_json(const PureState& psi) {
  std::string out = "{\"twice_l\": " + std::to_string(psi.spin().twice()) + ", \"amplitudes\": [";
  for (int k = 0; k < psi.spin().dim(); ++k) {
    if (k) out += ", ";
    out += "[" + format_double(psi[k].real()) + ", " + format_double(psi[k].imag()) + "]";
  }
  return out + "]}\n";
}

std::string format_state_csv(const PureState& psi) {
  std::string out = "l,m,re,im\n";
  const SpinLabel l = psi.spin();
  for (int k = 0; k < l.dim(); ++k) {
    const int tm = l.twice() - 2 * k;
    const std::string m = (tm % 2 == 0) ? std::to_string(tm / 2) : format_double(tm / 2.0);
    out += l.to_string() + "," + m + "," + format_double(psi[k].real()) + "," + format_double(psi[k].imag()) + "\n";
  }
  return out;
}

void save_state(const std::string& path, const PureState& psi, StateFormat format) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write state file '" + path + "'");
  f << (format == StateFormat::kJson ? format_state_json(psi) : format_state_csv(psi));
}

}  // namespace wehrl
