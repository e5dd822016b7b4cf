#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace estfam::cli {

enum class Format { kText, kCsv, kJson };

/// One table value. csv and json render numbers at 10 significant digits
/// (identical values in both); text renders at 4 decimals, presentation
/// only. Integers are never run through %g, so 64-bit seeds and counts
/// keep every digit.
struct Cell {
  enum class Kind { kText, kNumber, kInteger, kMissing };

  Kind kind = Kind::kMissing;
  std::string text;
  double number = 0.0;
  std::uint64_t integer = 0;

  static Cell of_text(std::string v) {
    Cell c;
    c.kind = Kind::kText;
    c.text = std::move(v);
    return c;
  }
  static Cell of_number(double v) {
    Cell c;
    c.kind = Kind::kNumber;
    c.number = v;
    return c;
  }
  static Cell of_integer(std::uint64_t v) {
    Cell c;
    c.kind = Kind::kInteger;
    c.integer = v;
    return c;
  }
  static Cell missing() { return Cell{}; }
};

/// Output of one command: a named table with key/value metadata.
struct Table {
  std::string command;
  std::vector<std::pair<std::string, Cell>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// v formatted with `digits` significant digits ("%.*g").
std::string format_sig(double v, int digits = 10);

/// v rounded to what format_sig prints, so json numbers carry exactly the
/// csv values.
double round_sig(double v, int digits = 10);

void render(const Table& table, Format format, std::ostream& out);

}  // namespace estfam::cli
