#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ltag {

enum class ErrorKind {
  InvalidValue,
  AddressUnresolvable,
  NotASlot,
  CategoryMismatch,
  FillerNotInitial,
  InvalidAdjunctionSite,
  AuxiliaryWithoutFoot,
  DuplicateAdjunction,
  IncompleteTree,
  UnknownTree,
  DuplicateId,
  InvalidGrammar,
  InvalidInput,
  Syntax,
  MissingFragment,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the library.
class TagError : public std::runtime_error {
 public:
  TagError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Text-format failure with a 1-based source position.
class ParseError : public TagError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  /// Message without the "line:col:" prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

/// Short lowercase language code, e.g. "en" or "hi".
class LanguageTag {
 public:
  explicit LanguageTag(std::string code);

  static bool is_valid(std::string_view code);

  const std::string& str() const noexcept { return code_; }

  auto operator<=>(const LanguageTag&) const = default;

 private:
  std::string code_;
};

/// Node label such as PP, DP or AdjP.
class Category {
 public:
  explicit Category(std::string label);

  static bool is_valid(std::string_view label);

  const std::string& str() const noexcept { return label_; }

  auto operator<=>(const Category&) const = default;

 private:
  std::string label_;
};

/// Gorn address: 1-based child indices from the root. Empty path is the root.
class NodeAddress {
 public:
  NodeAddress() = default;
  explicit NodeAddress(std::vector<int> path);

  static NodeAddress root() { return {}; }
  /// Parses "r" or a dotted path such as "1.2".
  static NodeAddress parse(std::string_view text);

  const std::vector<int>& path() const noexcept { return path_; }
  bool is_root() const noexcept { return path_.empty(); }
  std::size_t depth() const noexcept { return path_.size(); }

  NodeAddress child(int index) const;
  /// True when this address is `other` or lies beneath it.
  bool is_within(const NodeAddress& other) const;

  /// "r" for the root, otherwise "1.2.3".
  std::string str() const;

  auto operator<=>(const NodeAddress&) const = default;

 private:
  std::vector<int> path_;
};

struct Token {
  std::string surface;
  LanguageTag language;

  Token(std::string surface, LanguageTag language);

  /// "surface:lang"
  std::string str() const;

  auto operator<=>(const Token&) const = default;
};

using TokenSequence = std::vector<Token>;

/// Space-separated "surface:lang" rendering.
std::string to_string(const TokenSequence& tokens);

std::ostream& operator<<(std::ostream& os, const LanguageTag& tag);
std::ostream& operator<<(std::ostream& os, const Category& cat);
std::ostream& operator<<(std::ostream& os, const NodeAddress& addr);
std::ostream& operator<<(std::ostream& os, const Token& token);

}  // namespace ltag
