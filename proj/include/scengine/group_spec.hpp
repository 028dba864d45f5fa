#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scengine/errors.hpp"
#include "scengine/number_theory.hpp"

namespace scengine {

/// Parsed group description.
///
///   spec := cyclic:N | elemab:P^K | dihedral:N | semidihedral:N | quaternion:N
///         | sym:N | extraspecial:27+ | matgroup(P, N, @file)
///         | semidirect(spec, @file) | direct(spec, spec) | wreath(spec, spec)
///
/// dihedral, semidihedral and quaternion take the group order.
struct GroupSpec {
  enum class Kind { Cyclic, Elemab, Dihedral, Semidihedral, Quaternion, Sym, Extraspecial27, Matgroup, Semidirect, Direct, Wreath };

  Kind kind = Kind::Cyclic;
  std::vector<std::uint64_t> params;
  std::string file;
  std::vector<GroupSpec> children;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

inline std::string to_string(const GroupSpec& s) {
  using K = GroupSpec::Kind;
  const auto num = [&](std::size_t i) { return std::to_string(s.params.at(i)); };
  switch (s.kind) {
    case K::Cyclic: return "cyclic:" + num(0);
    case K::Elemab: return "elemab:" + num(0) + "^" + num(1);
    case K::Dihedral: return "dihedral:" + num(0);
    case K::Semidihedral: return "semidihedral:" + num(0);
    case K::Quaternion: return "quaternion:" + num(0);
    case K::Sym: return "sym:" + num(0);
    case K::Extraspecial27: return "extraspecial:27+";
    case K::Matgroup: return "matgroup(" + num(0) + ", " + num(1) + ", @" + s.file + ")";
    case K::Semidirect: return "semidirect(" + to_string(s.children.at(0)) + ", @" + s.file + ")";
    case K::Direct: return "direct(" + to_string(s.children.at(0)) + ", " + to_string(s.children.at(1)) + ")";
    case K::Wreath: return "wreath(" + to_string(s.children.at(0)) + ", " + to_string(s.children.at(1)) + ")";
  }
  return {};
}

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  GroupSpec parse_all() {
    GroupSpec s = parse_spec();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(at, msg);
  }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    if (start == pos_) fail("expected a construction name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
      if (v > 1'000'000'000ULL) fail("integer too large", start);
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      ++pos_;
    }
    if (start == pos_) fail("expected an integer");
    return v;
  }

  std::string file() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '@') fail("expected '@' file reference");
    ++pos_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ')' && text_[pos_] != ',') ++pos_;
    std::string path(text_.substr(start, pos_ - start));
    while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back())) != 0) path.pop_back();
    if (path.empty()) fail("empty file path", start);
    return path;
  }

  GroupSpec parse_spec() {
    using K = GroupSpec::Kind;
    skip_ws();
    const std::size_t start = pos_;
    const std::string name = word();
    GroupSpec s;
    const auto single = [&](K kind) {
      expect(':');
      const std::size_t at = pos_;
      s.kind = kind;
      s.params = {integer()};
      return at;
    };
    if (name == "cyclic") {
      const auto at = single(K::Cyclic);
      if (s.params[0] < 1) fail("cyclic order must be positive", at);
    } else if (name == "elemab") {
      expect(':');
      const std::size_t at = pos_;
      const auto p = integer();
      expect('^');
      const auto k = integer();
      if (!is_prime(p)) fail("elemab base must be prime", at);
      if (k < 1) fail("elemab exponent must be positive", at);
      s.kind = K::Elemab;
      s.params = {p, k};
    } else if (name == "dihedral") {
      const auto at = single(K::Dihedral);
      if (s.params[0] < 2 || s.params[0] % 2 != 0) fail("dihedral order must be even and at least 2", at);
    } else if (name == "semidihedral") {
      const auto at = single(K::Semidihedral);
      if (s.params[0] < 16 || !is_power_of(s.params[0], 2)) fail("semidihedral order must be 2^k >= 16", at);
    } else if (name == "quaternion") {
      const auto at = single(K::Quaternion);
      if (s.params[0] < 8 || !is_power_of(s.params[0], 2)) fail("quaternion order must be 2^k >= 8", at);
    } else if (name == "sym") {
      const auto at = single(K::Sym);
      if (s.params[0] < 1 || s.params[0] > 8) fail("sym degree must lie in 1..8", at);
    } else if (name == "extraspecial") {
      expect(':');
      const std::size_t at = pos_;
      if (integer() != 27) fail("only extraspecial:27+ is supported", at);
      expect('+');
      s.kind = K::Extraspecial27;
    } else if (name == "matgroup") {
      expect('(');
      const std::size_t at = pos_;
      const auto p = integer();
      expect(',');
      const auto n = integer();
      expect(',');
      if (!is_prime(p)) fail("matgroup field order must be prime", at);
      if (n < 1 || n > 16) fail("matgroup dimension must lie in 1..16", at);
      s.kind = K::Matgroup;
      s.params = {p, n};
      s.file = file();
      expect(')');
    } else if (name == "semidirect") {
      expect('(');
      const std::size_t at = pos_;
      s.kind = K::Semidirect;
      s.children.push_back(parse_spec());
      const auto base = s.children[0].kind;
      if (base != K::Elemab && base != K::Extraspecial27) {
        fail("semidirect base must be elemab or extraspecial:27+", at);
      }
      expect(',');
      s.file = file();
      expect(')');
    } else if (name == "direct" || name == "wreath") {
      expect('(');
      s.kind = name == "direct" ? K::Direct : K::Wreath;
      s.children.push_back(parse_spec());
      expect(',');
      s.children.push_back(parse_spec());
      expect(')');
    } else {
      fail("unknown construction '" + name + "'", start);
    }
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline GroupSpec parse_group_spec(std::string_view text) { return detail::SpecParser(text).parse_all(); }

}  // namespace scengine
