#pragma once

// Coin sources: streams of flips with a declared exact bias.
//
// Script text format: a string over {H, T}, case-insensitive, whitespace
// ignored, e.g. "HTTH HHT". Used by CLI flags and test fixtures.
//
// The seeded fair source draws from std::mt19937_64 (whose output sequence
// is fixed by the C++ standard, so seeded runs reproduce across platforms),
// consuming each 64-bit output least-significant bit first.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coindie/flip.hpp"
#include "coindie/rational.hpp"

namespace coindie {

class CoinSource {
 public:
  virtual ~CoinSource() = default;

  // Draws one flip. Stochastic sources never fail; scripted sources throw
  // ScriptExhausted once the script runs out.
  virtual Flip next() = 0;

  // Exact probability of heads this source claims to produce.
  virtual Rational bias() const = 0;
};

class ScriptExhausted : public std::runtime_error {
 public:
  explicit ScriptExhausted(std::uint64_t consumed)
      : std::runtime_error("scripted source exhausted after " +
                           std::to_string(consumed) + " flips"),
        consumed_(consumed) {}

  std::uint64_t consumed() const { return consumed_; }

 private:
  std::uint64_t consumed_;
};

// Replays a fixed flip sequence; never recycles.
class ScriptedSource final : public CoinSource {
 public:
  ScriptedSource(std::vector<Flip> sequence, Rational bias);

  Flip next() override;
  Rational bias() const override { return bias_; }

  std::uint64_t consumed() const { return cursor_; }
  std::uint64_t remaining() const { return sequence_.size() - cursor_; }

 private:
  std::vector<Flip> sequence_;
  std::size_t cursor_ = 0;
  Rational bias_;
};

// Counts draws delegated to an inner source (borrowed, not owned).
// Failed draws do not count.
class CountingSource final : public CoinSource {
 public:
  explicit CountingSource(CoinSource& inner) : inner_(inner) {}

  Flip next() override {
    const Flip flip = inner_.next();
    ++count_;
    return flip;
  }
  Rational bias() const override { return inner_.bias(); }

  std::uint64_t count() const { return count_; }

 private:
  CoinSource& inner_;
  std::uint64_t count_ = 0;
};

inline CountingSource wrap_counting(CoinSource& inner) { return CountingSource(inner); }

// Parses the script text format. Throws std::invalid_argument on any
// character outside {H, T, whitespace}.
std::vector<Flip> parse_flips(std::string_view text);

std::string format_flips(std::span<const Flip> flips);

// Fair coin; seeded for reproducibility, unseeded for system entropy.
std::unique_ptr<CoinSource> make_fair_source(std::optional<std::uint64_t> seed = std::nullopt);

// Exact Bernoulli(1/n) built from fair flips: the drawn bits are compared
// against the binary expansion of 1/n until they first differ, heads iff the
// drawn bit is the smaller one. Consumes a geometric number of fair flips
// with mean 2. The fair source is borrowed and must outlive the coin.
std::unique_ptr<CoinSource> make_inverse_n_coin(std::uint64_t n, CoinSource& fair_bits);

std::unique_ptr<ScriptedSource> make_scripted(std::vector<Flip> sequence, Rational bias);
std::unique_ptr<ScriptedSource> make_scripted(std::string_view script, Rational bias);

}  // namespace coindie
