#include "fairvote/profile.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace fairvote {

PreferenceProfile::PreferenceProfile(std::size_t m, std::vector<Ballot> ballots)
    : m_(m), ballots_(std::move(ballots)) {
  if (m_ == 0) throw std::invalid_argument("profile needs at least one alternative");
  if (ballots_.empty()) throw std::invalid_argument("profile needs at least one ballot");
  positions_.assign(ballots_.size() * m_, m_);
  for (std::size_t b = 0; b < ballots_.size(); ++b) {
    const Ballot& ballot = ballots_[b];
    if (ballot.weight <= 0) throw std::invalid_argument("ballot weight must be positive");
    if (ballot.order.size() != m_) throw std::invalid_argument("ballot length differs from m");
    for (std::size_t pos = 0; pos < m_; ++pos) {
      Alternative a = ballot.order[pos];
      if (a >= m_) throw std::invalid_argument("alternative out of range");
      if (positions_[b * m_ + a] != m_) throw std::invalid_argument("ballot is not a permutation");
      positions_[b * m_ + a] = pos;
    }
    n_ += ballot.weight;
  }
}

std::size_t PreferenceProfile::ballot_of_agent(std::int64_t agent) const {
  if (agent < 0) throw std::out_of_range("negative agent index");
  for (std::size_t b = 0; b < ballots_.size(); ++b) {
    if (agent < ballots_[b].weight) return b;
    agent -= ballots_[b].weight;
  }
  throw std::out_of_range("agent index beyond n");
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::int64_t to_int(std::string_view token, std::size_t line, const char* what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, std::string("expected integer ") + what + ", got '" +
                               std::string(token) + "'");
  return v;
}

}  // namespace

PreferenceProfile parse_profile(std::string_view text) {
  std::size_t line_no = 0;
  bool have_header = false;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t total = 0;
  std::vector<Ballot> ballots;

  while (!text.empty()) {
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
    ++line_no;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;

    if (!have_header) {
      auto tokens = tokenize(line);
      if (tokens.size() != 2) throw ParseError(line_no, "header must be 'n m'");
      n = to_int(tokens[0], line_no, "n");
      m = to_int(tokens[1], line_no, "m");
      if (n < 1 || m < 1) throw ParseError(line_no, "header needs n >= 1 and m >= 1");
      have_header = true;
      continue;
    }

    Ballot ballot;
    std::string_view body = line;
    if (auto colon = line.find(':'); colon != std::string_view::npos) {
      auto head = tokenize(line.substr(0, colon));
      if (head.size() != 1) throw ParseError(line_no, "malformed multiplicity");
      ballot.weight = to_int(head[0], line_no, "multiplicity");
      if (ballot.weight < 1) throw ParseError(line_no, "multiplicity must be positive");
      body = line.substr(colon + 1);
    }
    auto tokens = tokenize(body);
    if (static_cast<std::int64_t>(tokens.size()) != m)
      throw ParseError(line_no, "ballot lists " + std::to_string(tokens.size()) +
                                    " alternatives, expected " + std::to_string(m));
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (auto token : tokens) {
      std::int64_t a = to_int(token, line_no, "alternative");
      if (a < 1 || a > m)
        throw ParseError(line_no, "alternative " + std::to_string(a) + " out of range");
      if (seen[a - 1]) throw ParseError(line_no, "ballot is not a permutation");
      seen[a - 1] = true;
      ballot.order.push_back(static_cast<Alternative>(a - 1));
    }
    total += ballot.weight;
    ballots.push_back(std::move(ballot));
  }

  if (!have_header) throw ParseError(line_no, "missing header");
  if (total != n)
    throw ParseError(line_no, "ballot weights sum to " + std::to_string(total) + ", header says " +
                                  std::to_string(n));
  return PreferenceProfile(static_cast<std::size_t>(m), std::move(ballots));
}

PreferenceProfile read_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_profile(buffer.str());
}

std::string serialize_profile(const PreferenceProfile& profile) {
  std::ostringstream out;
  out << profile.num_agents() << ' ' << profile.num_alternatives() << '\n';
  for (std::size_t b = 0; b < profile.num_ballots(); ++b) {
    if (profile.weight(b) != 1) out << profile.weight(b) << ": ";
    auto order = profile.order(b);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      if (pos) out << ' ';
      out << order[pos] + 1;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace fairvote
