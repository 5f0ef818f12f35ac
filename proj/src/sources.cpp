#include "coindie/sources.hpp"

#include <cctype>
#include <random>
#include <utility>

namespace coindie {

ScriptedSource::ScriptedSource(std::vector<Flip> sequence, Rational bias)
    : sequence_(std::move(sequence)), bias_(bias) {}

Flip ScriptedSource::next() {
  if (cursor_ >= sequence_.size()) throw ScriptExhausted(cursor_);
  return sequence_[cursor_++];
}

std::vector<Flip> parse_flips(std::string_view text) {
  std::vector<Flip> flips;
  flips.reserve(text.size());
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'H': flips.push_back(Flip::heads); break;
      case 'T': flips.push_back(Flip::tails); break;
      default:
        throw std::invalid_argument(std::string("invalid flip character '") + c +
                                    "' (expected H or T)");
    }
  }
  return flips;
}

std::string format_flips(std::span<const Flip> flips) {
  std::string text;
  text.reserve(flips.size());
  for (const Flip flip : flips) text.push_back(to_char(flip));
  return text;
}

namespace {

class FairSource final : public CoinSource {
 public:
  explicit FairSource(std::uint64_t seed) : engine_(seed) {}

  Flip next() override {
    if (available_ == 0) {
      buffer_ = engine_();
      available_ = 64;
    }
    const Flip flip = (buffer_ & 1) ? Flip::heads : Flip::tails;
    buffer_ >>= 1;
    --available_;
    return flip;
  }

  Rational bias() const override { return Rational(1, 2); }

 private:
  std::mt19937_64 engine_;
  std::uint64_t buffer_ = 0;
  unsigned available_ = 0;
};

class InverseNCoin final : public CoinSource {
 public:
  InverseNCoin(std::uint64_t n, CoinSource& fair_bits) : n_(n), fair_bits_(fair_bits) {}

  Flip next() override {
    // Long division emits the binary digits of 1/n one at a time; the draw
    // is decided at the first digit where the fair bit disagrees.
    // 2r >= n is phrased as r >= n - r so doubling cannot overflow.
    std::uint64_t remainder = 1;
    for (;;) {
      const bool expansion_bit = remainder >= n_ - remainder;
      remainder = expansion_bit ? remainder - (n_ - remainder) : remainder * 2;
      const bool drawn_bit = is_heads(fair_bits_.next());
      if (drawn_bit != expansion_bit) {
        return expansion_bit ? Flip::heads : Flip::tails;
      }
    }
  }

  Rational bias() const override { return Rational(1, Int128(n_)); }

 private:
  std::uint64_t n_;
  CoinSource& fair_bits_;
};

}  // namespace

std::unique_ptr<CoinSource> make_fair_source(std::optional<std::uint64_t> seed) {
  if (!seed) {
    std::random_device device;
    seed = (std::uint64_t{device()} << 32) ^ device();
  }
  return std::make_unique<FairSource>(*seed);
}

std::unique_ptr<CoinSource> make_inverse_n_coin(std::uint64_t n, CoinSource& fair_bits) {
  if (n == 0) throw std::invalid_argument("make_inverse_n_coin: n must be positive");
  return std::make_unique<InverseNCoin>(n, fair_bits);
}

std::unique_ptr<ScriptedSource> make_scripted(std::vector<Flip> sequence, Rational bias) {
  return std::make_unique<ScriptedSource>(std::move(sequence), bias);
}

std::unique_ptr<ScriptedSource> make_scripted(std::string_view script, Rational bias) {
  return std::make_unique<ScriptedSource>(parse_flips(script), bias);
}

}  // namespace coindie
