#include "sebv/bitstring.hpp"

#include <bit>

#include "sebv/errors.hpp"

namespace sebv {

BitString::BitString(int width, std::uint32_t bits) : width_(width), bits_(bits) {
  if (width < 1 || width > kMaxWidth) {
    throw ArgumentError("bit string width " + std::to_string(width) + " outside [1, " +
                        std::to_string(kMaxWidth) + "]");
  }
  if ((bits >> width) != 0) {
    throw ArgumentError("bit string value " + std::to_string(bits) + " does not fit in " +
                        std::to_string(width) + " bits");
  }
}

BitString BitString::zeros(int width) { return BitString(width, 0); }

BitString BitString::one_hot(int width, int position) {
  if (position < 0 || position >= width) {
    throw IndexError("one-hot position " + std::to_string(position) + " out of range");
  }
  return BitString(width, std::uint32_t{1} << position);
}

BitString BitString::parse(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxWidth)) {
    throw ArgumentError("bit string must have 1 to " + std::to_string(kMaxWidth) +
                        " characters, got '" + std::string(text) + "'");
  }
  std::uint32_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw ArgumentError("bit string may only contain 0 and 1, got '" + std::string(text) + "'");
    }
    bits = (bits << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return BitString(static_cast<int>(text.size()), bits);
}

bool BitString::bit(int position) const {
  if (position < 0 || position >= width_) {
    throw IndexError("bit position " + std::to_string(position) + " out of range for width " +
                     std::to_string(width_));
  }
  return ((bits_ >> position) & 1u) != 0;
}

int BitString::popcount() const { return std::popcount(bits_); }

bool BitString::dot(const BitString& other) const {
  if (other.width_ != width_) throw ArgumentError("inner product of bit strings of unequal width");
  return (std::popcount(bits_ & other.bits_) & 1) != 0;
}

BitString BitString::operator^(const BitString& other) const {
  BitString out = *this;
  out ^= other;
  return out;
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.width_ != width_) throw ArgumentError("XOR of bit strings of unequal width");
  bits_ ^= other.bits_;
  return *this;
}

std::string BitString::to_string() const {
  std::string out(static_cast<std::size_t>(width_), '0');
  for (int i = 0; i < width_; ++i) {
    if ((bits_ >> i) & 1u) out[static_cast<std::size_t>(width_ - 1 - i)] = '1';
  }
  return out;
}

BitString concat(const BitString& high, const BitString& low) {
  return BitString(high.width() + low.width(), (high.value() << low.width()) | low.value());
}

}  // namespace sebv
