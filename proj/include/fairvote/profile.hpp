#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fairvote {

// Alternatives are 0-indexed everywhere except in files and CLI output.
using Alternative = std::size_t;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Ballot {
  std::vector<Alternative> order;  // best to worst
  std::int64_t weight = 1;

  bool operator==(const Ballot&) const = default;
};

// n agents over m alternatives, stored as weighted ballots. Identical agents
// share a ballot; "agent" in the API below means a ballot index unless a
// function says otherwise.
class PreferenceProfile {
 public:
  PreferenceProfile(std::size_t m, std::vector<Ballot> ballots);

  std::size_t num_alternatives() const { return m_; }
  std::int64_t num_agents() const { return n_; }
  std::size_t num_ballots() const { return ballots_.size(); }

  const Ballot& ballot(std::size_t b) const { return ballots_.at(b); }
  std::span<const Alternative> order(std::size_t b) const { return ballots_[b].order; }
  std::int64_t weight(std::size_t b) const { return ballots_[b].weight; }

  // 0-based position of a in ballot b (sigma_i(a) - 1).
  std::size_t position(std::size_t b, Alternative a) const { return positions_[b * m_ + a]; }
  Alternative top(std::size_t b) const { return ballots_[b].order.front(); }
  bool prefers(std::size_t b, Alternative a, Alternative other) const {
    return position(b, a) < position(b, other);
  }

  // Ballot holding the agent with the given 0-based agent index.
  std::size_t ballot_of_agent(std::int64_t agent) const;

  bool operator==(const PreferenceProfile& other) const {
    return m_ == other.m_ && ballots_ == other.ballots_;
  }

 private:
  std::size_t m_;
  std::int64_t n_ = 0;
  std::vector<Ballot> ballots_;
  std::vector<std::size_t> positions_;
};

// Text format: header "n m", then one ballot per line, either "r1 ... rm" or
// "k: r1 ... rm" with 1-indexed alternatives listed best to worst. Commas are
// accepted as separators, '#' starts a comment line.
PreferenceProfile parse_profile(std::string_view text);
PreferenceProfile read_profile_file(const std::string& path);
std::string serialize_profile(const PreferenceProfile& profile);

}  // namespace fairvote
