#include "rowsynth/model.hpp"

#include <cctype>
#include <charconv>

#include "rowsynth/errors.hpp"

namespace rowsynth {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

template <class Fn>
void for_each_field(std::string_view text, Fn&& fn) {
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    fn(trim(text.substr(start, comma == std::string_view::npos
                                   ? std::string_view::npos
                                   : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
}

}  // namespace

Alphabet::Alphabet(int q) : q_(q) {
  if (q < 2) {
    throw InputError("alphabet size must be at least 2, got " +
                     std::to_string(q));
  }
}

void validate_strand(const Strand& z, Alphabet alphabet) {
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (!alphabet.contains(z[k])) {
      throw InputError("symbol " + std::to_string(z[k]) + " at position " +
                       std::to_string(k + 1) + " is outside alphabet of size " +
                       std::to_string(alphabet.size()));
    }
  }
}

Symbol periodic_symbol(Alphabet alphabet, std::int64_t slot) {
  return static_cast<Symbol>((slot - 1) % alphabet.size());
}

Duration solo_time(const Strand& z, Alphabet alphabet, Symbol start_phase) {
  validate_strand(z, alphabet);
  if (!alphabet.contains(start_phase)) {
    throw InputError("start phase outside alphabet");
  }
  if (z.empty()) return 0;
  const int q = alphabet.size();
  // The slot before slot 1 notionally emitted start_phase - 1.
  Duration t = transition_cost(start_phase - 1, z.front(), q);
  for (std::size_t k = 1; k < z.size(); ++k) {
    t += transition_cost(z[k - 1], z[k], q);
  }
  return t;
}

Strand parse_strand(std::string_view text, Alphabet alphabet) {
  text = trim(text);
  Strand z;
  if (text.empty()) return z;

  const bool digit_form =
      alphabet.size() <= 10 && text.find(',') == std::string_view::npos;
  if (digit_form) {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw InputError("bad character '" + std::string(1, c) +
                         "' in strand \"" + std::string(text) + "\"");
      }
      z.push_back(c - '0');
    }
  } else {
    for_each_field(text, [&](std::string_view field) {
      Symbol s = 0;
      const auto* end = field.data() + field.size();
      auto [ptr, ec] = std::from_chars(field.data(), end, s);
      if (field.empty() || ec != std::errc() || ptr != end) {
        throw InputError("bad symbol \"" + std::string(field) +
                         "\" in strand \"" + std::string(text) + "\"");
      }
      z.push_back(s);
    });
  }
  validate_strand(z, alphabet);
  return z;
}

std::string format_strand(const Strand& z) {
  std::string out;
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(z[k]);
  }
  return out;
}

Schedule parse_schedule(std::string_view text) {
  text = trim(text);
  Schedule schedule;
  if (text.empty()) return schedule;
  for_each_field(text, [&](std::string_view field) {
    if (field == "X" || field == "x") {
      schedule.actions.push_back(kAdvanceX);
    } else if (field == "Y" || field == "y") {
      schedule.actions.push_back(kAdvanceY);
    } else if (field == "-") {
      schedule.actions.push_back(kIdle);
    } else {
      throw InputError("bad schedule action \"" + std::string(field) + "\"");
    }
  });
  return schedule;
}

std::string format_schedule(const Schedule& schedule) {
  std::string out;
  for (std::size_t k = 0; k < schedule.actions.size(); ++k) {
    if (k) out += ',';
    const Action a = schedule.actions[k];
    if (a.is_idle()) {
      out += '-';
    } else if (a.strand() == 1) {
      out += 'X';
    } else if (a.strand() == 2) {
      out += 'Y';
    } else {
      out += std::to_string(a.strand());
    }
  }
  return out;
}

}  // namespace rowsynth
