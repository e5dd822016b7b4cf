#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"

namespace estfam::cli {

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

double round_sig(double v, int digits) {
  return std::strtod(format_sig(v, digits).c_str(), nullptr);
}

namespace {

std::string csv_value(const Cell& cell) {
  switch (cell.kind) {
    case Cell::Kind::kText:
      return cell.text;
    case Cell::Kind::kNumber:
      return format_sig(cell.number);
    case Cell::Kind::kInteger:
      return std::to_string(cell.integer);
    case Cell::Kind::kMissing:
      return "";
  }
  return "";
}

std::string text_value(const Cell& cell) {
  switch (cell.kind) {
    case Cell::Kind::kText:
      return cell.text;
    case Cell::Kind::kNumber: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.4f", cell.number);
      return buf;
    }
    case Cell::Kind::kInteger:
      return std::to_string(cell.integer);
    case Cell::Kind::kMissing:
      return "-";
  }
  return "-";
}

nlohmann::ordered_json json_value(const Cell& cell) {
  switch (cell.kind) {
    case Cell::Kind::kText:
      return cell.text;
    case Cell::Kind::kNumber:
      if (!std::isfinite(cell.number)) return nullptr;
      return round_sig(cell.number);
    case Cell::Kind::kInteger:
      return cell.integer;
    case Cell::Kind::kMissing:
      return nullptr;
  }
  return nullptr;
}

void render_csv(const Table& table, std::ostream& out) {
  out << "# command=" << table.command << "\n";
  for (const auto& [key, cell] : table.metadata)
    out << "# " << key << "=" << csv_value(cell) << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ",";
    out << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      out << csv_value(row[c]);
    }
    out << "\n";
  }
}

void render_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["command"] = table.command;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, cell] : table.metadata) meta[key] = json_value(cell);
  doc["meta"] = std::move(meta);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c)
      obj[table.columns[c]] = json_value(row[c]);
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

void render_text(const Table& table, std::ostream& out) {
  out << table.command << "\n";
  for (const auto& [key, cell] : table.metadata)
    out << "  " << key << " = " << text_value(cell) << "\n";
  if (table.columns.empty()) return;
  out << "\n";

  const std::size_t column_count = table.columns.size();
  std::vector<std::size_t> width(column_count);
  std::vector<bool> textual(column_count, false);
  for (std::size_t c = 0; c < column_count; ++c)
    width[c] = table.columns[c].size();

  std::vector<std::vector<std::string>> rendered;
  rendered.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    std::vector<std::string> cells(column_count);
    for (std::size_t c = 0; c < column_count && c < row.size(); ++c) {
      cells[c] = text_value(row[c]);
      width[c] = std::max(width[c], cells[c].size());
      if (row[c].kind == Cell::Kind::kText) textual[c] = true;
    }
    rendered.push_back(std::move(cells));
  }

  auto emit_row = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < column_count; ++c) {
      if (c) out << "  ";
      const std::string& value = c < cells.size() ? cells[c] : std::string();
      const std::string pad(width[c] - value.size(), ' ');
      if (textual[c]) {
        out << value;
        if (c + 1 < column_count) out << pad;
      } else {
        out << pad << value;
      }
    }
    out << "\n";
  };

  emit_row(table.columns);
  std::size_t total = 0;
  for (std::size_t c = 0; c < column_count; ++c)
    total += width[c] + (c ? 2 : 0);
  out << std::string(total, '-') << "\n";
  for (const auto& cells : rendered) emit_row(cells);
}

}  // namespace

void render(const Table& table, Format format, std::ostream& out) {
  switch (format) {
    case Format::kText:
      render_text(table, out);
      break;
    case Format::kCsv:
      render_csv(table, out);
      break;
    case Format::kJson:
      render_json(table, out);
      break;
  }
}

}  // namespace estfam::cli
