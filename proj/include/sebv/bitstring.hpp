#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sebv {

/// Fixed-width binary word. Position i holds bit i of `value()`; text form
/// is most-significant position first, so "110" has bits 2 and 1 set.
class BitString {
 public:
  static constexpr int kMaxWidth = 16;

  BitString() = default;
  /// Throws ArgumentError if width is outside [1, kMaxWidth] or if `bits`
  /// has anything set at or above `width`.
  BitString(int width, std::uint32_t bits);

  static BitString zeros(int width);
  static BitString one_hot(int width, int position);
  /// Parses an MSB-first string of '0'/'1' characters.
  static BitString parse(std::string_view text);

  int width() const { return width_; }
  std::uint32_t value() const { return bits_; }
  bool bit(int position) const;
  bool is_zero() const { return bits_ == 0; }
  int popcount() const;

  /// Inner product modulo 2.
  bool dot(const BitString& other) const;

  BitString operator^(const BitString& other) const;
  BitString& operator^=(const BitString& other);

  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (auto c = a.width_ <=> b.width_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  int width_ = 1;
  std::uint32_t bits_ = 0;
};

/// `high` occupies the upper positions; renders as high followed by low.
BitString concat(const BitString& high, const BitString& low);

}  // namespace sebv
