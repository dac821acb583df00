#include "ltag/types.hpp"

#include <charconv>
#include <ostream>

namespace ltag {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidValue: return "invalid value";
    case ErrorKind::AddressUnresolvable: return "address unresolvable";
    case ErrorKind::NotASlot: return "not a substitution slot";
    case ErrorKind::CategoryMismatch: return "category mismatch";
    case ErrorKind::FillerNotInitial: return "filler not initial";
    case ErrorKind::InvalidAdjunctionSite: return "invalid adjunction site";
    case ErrorKind::AuxiliaryWithoutFoot: return "auxiliary without foot";
    case ErrorKind::DuplicateAdjunction: return "duplicate adjunction";
    case ErrorKind::IncompleteTree: return "incomplete tree";
    case ErrorKind::UnknownTree: return "unknown tree";
    case ErrorKind::DuplicateId: return "duplicate id";
    case ErrorKind::InvalidGrammar: return "invalid grammar";
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::MissingFragment: return "missing fragment";
  }
  return "error";
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : TagError(ErrorKind::Syntax,
               std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

LanguageTag::LanguageTag(std::string code) : code_(std::move(code)) {
  if (!is_valid(code_)) {
    throw TagError(ErrorKind::InvalidValue, "invalid language tag '" + code_ + "'");
  }
}

// [a-z][a-z0-9]{1,7}
bool LanguageTag::is_valid(std::string_view code) {
  if (code.size() < 2 || code.size() > 8 || !is_lower(code[0])) return false;
  for (char c : code.substr(1)) {
    if (!is_lower(c) && !is_digit(c)) return false;
  }
  return true;
}

Category::Category(std::string label) : label_(std::move(label)) {
  if (!is_valid(label_)) {
    throw TagError(ErrorKind::InvalidValue, "invalid category '" + label_ + "'");
  }
}

// [A-Z][A-Za-z0-9']*
bool Category::is_valid(std::string_view label) {
  if (label.empty() || !is_upper(label[0])) return false;
  for (char c : label.substr(1)) {
    if (!is_upper(c) && !is_lower(c) && !is_digit(c) && c != '\'') return false;
  }
  return true;
}

NodeAddress::NodeAddress(std::vector<int> path) : path_(std::move(path)) {
  for (int index : path_) {
    if (index < 1) throw TagError(ErrorKind::InvalidValue, "node address index must be >= 1");
  }
}

NodeAddress NodeAddress::parse(std::string_view text) {
  if (text == "r") return {};
  std::vector<int> path;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    if (dot == std::string_view::npos) dot = text.size();
    std::string_view part = text.substr(pos, dot - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || value < 1) {
      throw TagError(ErrorKind::InvalidValue, "invalid node address '" + std::string(text) + "'");
    }
    path.push_back(value);
    pos = dot + 1;
  }
  return NodeAddress(std::move(path));
}

NodeAddress NodeAddress::child(int index) const {
  std::vector<int> path = path_;
  path.push_back(index);
  return NodeAddress(std::move(path));
}

bool NodeAddress::is_within(const NodeAddress& other) const {
  if (other.path_.size() > path_.size()) return false;
  for (std::size_t i = 0; i < other.path_.size(); ++i) {
    if (path_[i] != other.path_[i]) return false;
  }
  return true;
}

std::string NodeAddress::str() const {
  if (path_.empty()) return "r";
  std::string out;
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path_[i]);
  }
  return out;
}

Token::Token(std::string s, LanguageTag lang) : surface(std::move(s)), language(std::move(lang)) {
  if (surface.empty()) throw TagError(ErrorKind::InvalidValue, "empty token surface");
  for (char c : surface) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f') {
      throw TagError(ErrorKind::InvalidValue, "token surface contains whitespace");
    }
  }
}

std::string Token::str() const { return surface + ":" + language.str(); }

std::string to_string(const TokenSequence& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i].str();
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const LanguageTag& tag) { return os << tag.str(); }
std::ostream& operator<<(std::ostream& os, const Category& cat) { return os << cat.str(); }
std::ostream& operator<<(std::ostream& os, const NodeAddress& addr) { return os << addr.str(); }
std::ostream& operator<<(std::ostream& os, const Token& token) { return os << token.str(); }

}  // namespace ltag
