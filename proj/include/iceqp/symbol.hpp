#pragma once

#include <compare>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>

namespace iceqp {

/// Interned string. Equality is pointer equality; ordering is by string
/// content, so every container keyed on symbols iterates deterministically.
class Symbol {
 public:
  Symbol() : text_(intern("")) {}
  Symbol(std::string_view s) : text_(intern(s)) {}  // NOLINT(implicit)
  Symbol(const std::string& s) : text_(intern(s)) {}  // NOLINT(implicit)
  Symbol(const char* s) : text_(intern(s)) {}  // NOLINT(implicit)

  const std::string& str() const { return *text_; }
  bool empty() const { return text_->empty(); }

  friend bool operator==(Symbol a, Symbol b) { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) {
    if (a.text_ == b.text_) return std::strong_ordering::equal;
    return *a.text_ <=> *b.text_;
  }
  friend std::ostream& operator<<(std::ostream& os, Symbol s) { return os << s.str(); }

  std::size_t hash() const { return std::hash<const void*>{}(text_); }

 private:
  static const std::string* intern(std::string_view s) {
    static std::mutex mutex;
    static std::unordered_set<std::string> pool;
    std::lock_guard lock(mutex);
    return &*pool.emplace(s).first;
  }

  const std::string* text_;
};

}  // namespace iceqp

template <>
struct std::hash<iceqp::Symbol> {
  std::size_t operator()(iceqp::Symbol s) const noexcept { return s.hash(); }
};
