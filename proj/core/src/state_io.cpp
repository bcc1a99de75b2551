#include "entcont/state_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "entcont/error.hpp"

namespace entcont {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line_no) {
  T value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": bad number '" +
                                      std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_state(std::ostream& out, const BipartiteState& state) {
  const ComplexMatrix& m = state.rho().matrix();
  out << m.rows() << ' ' << state.dims().a << ' ' << state.dims().b << '\n';
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      out << format_double(m(r, c).real()) << ' ' << format_double(m(r, c).imag()) << '\n';
    }
  }
}

BipartiteState read_state(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> std::vector<std::string_view> {
    while (std::getline(in, line)) {
      ++line_no;
      auto tokens = split_ws(line);
      if (!tokens.empty()) return tokens;
    }
    throw Error(Errc::ParseError, "unexpected end of input after line " + std::to_string(line_no));
  };

  const auto header = next_line();
  if (header.size() != 3) throw Error(Errc::ParseError, "header must be 'dim dA dB'");
  const auto dim = parse_number<long long>(header[0], line_no);
  const auto da = parse_number<long long>(header[1], line_no);
  const auto db = parse_number<long long>(header[2], line_no);
  if (dim < 1 || da < 1 || db < 1) throw Error(Errc::ParseError, "dimensions must be positive");
  if (da * db != dim) {
    throw Error(Errc::DimensionMismatch, "header dimension does not equal dA*dB");
  }

  ComplexMatrix m(dim, dim);
  for (long long r = 0; r < dim; ++r) {
    for (long long c = 0; c < dim; ++c) {
      const auto tokens = next_line();
      if (tokens.size() != 2) {
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected 're im'");
      }
      m(r, c) = Complex(parse_number<double>(tokens[0], line_no),
                        parse_number<double>(tokens[1], line_no));
    }
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_ws(line).empty()) {
      throw Error(Errc::ParseError, "trailing content at line " + std::to_string(line_no));
    }
  }
  return BipartiteState({static_cast<Index>(da), static_cast<Index>(db)}, DensityMatrix(std::move(m)));
}

void save_state(const std::filesystem::path& path, const BipartiteState& state) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
  write_state(out, state);
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

BipartiteState load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  return read_state(in);
}

}  // namespace entcont
