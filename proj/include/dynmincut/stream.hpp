#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynmincut/graph.hpp"

namespace dynmincut {

/// Line-oriented update stream:
///
///     n <N>        header, first non-comment line
///     + u v        insert edge
///     - u v        delete edge
///     ?            query the edge connectivity
///     ?e           query a minimum cut with its edges
///
/// Blank lines and lines starting with '#' are ignored.
struct StreamEvent {
  enum class Kind { insert, remove, query_value, query_cut };
  Kind kind = Kind::query_value;
  EdgeKey edge{};
  std::size_t line = 0;  // 1-based source line, 0 when not parsed from text

  bool is_update() const { return kind == Kind::insert || kind == Kind::remove; }
  UpdateSign sign() const { return kind == Kind::insert ? UpdateSign::insert : UpdateSign::remove; }

  friend bool operator==(const StreamEvent& a, const StreamEvent& b) {
    return a.kind == b.kind && (!a.is_update() || a.edge == b.edge);
  }
};

struct UpdateStream {
  std::size_t n = 0;
  std::vector<StreamEvent> events;

  friend bool operator==(const UpdateStream&, const UpdateStream&) = default;
};

class StreamError : public std::runtime_error {
 public:
  StreamError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline bool parse_index(const std::string& tok, std::uint64_t& out) {
  if (tok.empty() || tok.size() > 19) return false;
  std::uint64_t v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  out = v;
  return true;
}

}  // namespace detail

inline UpdateStream parse_stream(std::istream& in) {
  UpdateStream s;
  bool have_header = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;

    if (!have_header) {
      std::uint64_t n = 0;
      if (tok.size() != 2 || tok[0] != "n" || !detail::parse_index(tok[1], n)) {
        throw StreamError(line, "expected header 'n <N>'");
      }
      if (n > 0xFFFFFFFFULL) throw StreamError(line, "vertex count too large");
      s.n = static_cast<std::size_t>(n);
      have_header = true;
      continue;
    }

    StreamEvent ev;
    ev.line = line;
    if (tok[0] == "+" || tok[0] == "-") {
      std::uint64_t u = 0;
      std::uint64_t v = 0;
      if (tok.size() != 3 || !detail::parse_index(tok[1], u) || !detail::parse_index(tok[2], v)) {
        throw StreamError(line, "expected '" + tok[0] + " u v'");
      }
      if (u >= s.n || v >= s.n) throw StreamError(line, "vertex out of range [0, " + std::to_string(s.n) + ")");
      if (u == v) throw StreamError(line, "self-loop");
      ev.kind = tok[0] == "+" ? StreamEvent::Kind::insert : StreamEvent::Kind::remove;
      ev.edge = EdgeKey::of(static_cast<VertexId>(u), static_cast<VertexId>(v));
    } else if (tok[0] == "?" && tok.size() == 1) {
      ev.kind = StreamEvent::Kind::query_value;
    } else if (tok[0] == "?e" && tok.size() == 1) {
      ev.kind = StreamEvent::Kind::query_cut;
    } else if (tok[0] == "n") {
      throw StreamError(line, "duplicate header");
    } else {
      throw StreamError(line, "unrecognized event '" + raw + "'");
    }
    s.events.push_back(ev);
  }
  if (!have_header) throw StreamError(line == 0 ? 1 : line, "missing header 'n <N>'");
  return s;
}

inline UpdateStream parse_stream(const std::string& text) {
  std::istringstream in(text);
  return parse_stream(in);
}

inline std::string render_stream(const UpdateStream& s) {
  std::string out = "n " + std::to_string(s.n) + "\n";
  for (const auto& ev : s.events) {
    switch (ev.kind) {
      case StreamEvent::Kind::insert:
      case StreamEvent::Kind::remove:
        out += ev.kind == StreamEvent::Kind::insert ? "+ " : "- ";
        out += std::to_string(ev.edge.u) + " " + std::to_string(ev.edge.v) + "\n";
        break;
      case StreamEvent::Kind::query_value:
        out += "?\n";
        break;
      case StreamEvent::Kind::query_cut:
        out += "?e\n";
        break;
    }
  }
  return out;
}

}  // namespace dynmincut
