#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "knot/census.hpp"
#include "knot/characteristic.hpp"
#include "knot/codes.hpp"
#include "knot/colorings.hpp"
#include "knot/moves.hpp"

namespace knot {

enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitInternal = 3 };

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int max_crossings = 10;
  int linear_max = 7;
  std::string tables = "builtin";  // builtin | none
  std::string out = ".";
  std::string format = "csv";  // csv | json
  int workers = 1;
  bool resume = false;
  std::string state;  // journal path; empty means <out>/census.journal
  std::string knots;  // input knots file for invariants
  std::string name;   // input for reduce
};

// A header plus rows; integer cells stay integers in JSON.
struct Sheet {
  using Cell = std::variant<long long, std::string>;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string cell_text(const Sheet::Cell& c) {
  if (auto* v = std::get_if<long long>(&c)) return std::to_string(*v);
  return std::get<std::string>(c);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw DataError("unterminated quote in csv line");
  out.push_back(cur);
  return out;
}

}  // namespace detail

inline void write_sheet(std::ostream& os, const Sheet& sh, const std::string& format) {
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : sh.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < sh.header.size(); ++i) {
        if (auto* v = std::get_if<long long>(&row[i])) obj[sh.header[i]] = *v;
        else obj[sh.header[i]] = std::get<std::string>(row[i]);
      }
      arr.push_back(std::move(obj));
    }
    nlohmann::ordered_json doc = {{"columns", sh.header}, {"rows", arr}};
    os << doc.dump(1) << "\n";
    return;
  }
  for (std::size_t i = 0; i < sh.header.size(); ++i) os << (i ? "," : "") << detail::csv_field(sh.header[i]);
  os << "\n";
  for (const auto& row : sh.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_field(detail::cell_text(row[i]));
    os << "\n";
  }
}

// Every cell comes back as text.
inline Sheet read_sheet(std::istream& is) {
  std::string all((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  Sheet sh;
  auto first = all.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw DataError("empty input");
  if (all[first] == '{') {
    nlohmann::ordered_json doc;
    try {
      doc = nlohmann::ordered_json::parse(all);
      sh.header = doc.at("columns").get<std::vector<std::string>>();
      for (const auto& obj : doc.at("rows")) {
        std::vector<Sheet::Cell> row;
        for (const auto& h : sh.header) {
          const auto& v = obj.at(h);
          row.emplace_back(v.is_string() ? v.get<std::string>() : v.dump());
        }
        sh.rows.push_back(std::move(row));
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("bad json: ") + e.what());
    }
    return sh;
  }
  std::istringstream in(all);
  std::string line;
  bool head = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto fields = detail::split_csv_line(line);
    if (head) {
      sh.header = fields;
      head = false;
      continue;
    }
    if (fields.size() != sh.header.size()) throw DataError("csv row has wrong field count: " + line);
    sh.rows.emplace_back(fields.begin(), fields.end());
  }
  return sh;
}

struct KnotRecord {
  int order = 0;
  int crossings = 0;
  Name name;
};

inline Sheet counts_sheet(const std::map<int, int>& counts) {
  Sheet sh;
  sh.header = {"crossings", "survivors"};
  for (auto [n, c] : counts) sh.rows.push_back({static_cast<long long>(n), static_cast<long long>(c)});
  return sh;
}

// Survivors in preference order; the order column numbers them from 0.
inline std::vector<KnotRecord> knot_records(const CensusState& st) {
  std::vector<Name> names;
  for (int k : survivors(st)) names.push_back(st.registry[k]);
  std::sort(names.begin(), names.end(), NamePreferred{});
  std::vector<KnotRecord> out;
  for (std::size_t i = 0; i < names.size(); ++i) out.push_back({static_cast<int>(i), names[i].n, names[i]});
  return out;
}

inline Sheet knots_sheet(const std::vector<KnotRecord>& knots) {
  Sheet sh;
  sh.header = {"order", "crossings", "name"};
  for (const auto& k : knots)
    sh.rows.push_back({static_cast<long long>(k.order), static_cast<long long>(k.crossings), format_name(k.name)});
  return sh;
}

inline std::vector<KnotRecord> knots_from_sheet(const Sheet& sh) {
  auto col = [&](const std::string& h) {
    for (std::size_t i = 0; i < sh.header.size(); ++i)
      if (sh.header[i] == h) return i;
    throw DataError("knots input lacks column '" + h + "'");
  };
  std::size_t co = col("order"), cn = col("name");
  std::vector<KnotRecord> out;
  for (const auto& row : sh.rows) {
    KnotRecord k;
    try {
      k.order = std::stoi(detail::cell_text(row[co]));
      k.name = parse_name(detail::cell_text(row[cn]));
    } catch (const ParseError& e) {
      throw DataError(std::string("bad knot record: ") + e.what());
    } catch (const std::logic_error&) {
      throw DataError("bad order cell '" + detail::cell_text(row[co]) + "'");
    }
    k.crossings = k.name.n;
    out.push_back(k);
  }
  return out;
}

inline Sheet invariants_sheet(const std::vector<KnotRecord>& knots, int linear_max, bool with_tables) {
  Sheet sh;
  sh.header = {"order", "crossings", "name", "characteristic", "alexander"};
  auto tests = linear_tests(linear_max);
  for (const auto& t : tests) sh.header.push_back(format_test(t));
  std::vector<PreparedTable> tables;
  if (with_tables)
    for (const auto& t : builtin_tables()) {
      tables.push_back(prepare_table(t));
      sh.header.push_back(t.label);
    }
  for (const auto& k : knots) {
    auto signs = signs_of(k.name);
    std::vector<Sheet::Cell> row{static_cast<long long>(k.order), static_cast<long long>(k.name.n),
                                 format_name(k.name), format_characteristic(characteristic_of(k.name)),
                                 alexander_form(k.name).to_string()};
    for (const auto& t : tests) row.emplace_back(linear_response(k.name, signs, t));
    for (const auto& t : tables) row.emplace_back(table_response(k.name, signs, t));
    sh.rows.push_back(std::move(row));
  }
  return sh;
}

namespace detail {

inline void write_file(const std::filesystem::path& p, const Sheet& sh, const std::string& format) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw DataError("cannot write " + p.string());
  write_sheet(os, sh, format);
  if (!os) throw DataError("write failed for " + p.string());
}

inline std::filesystem::path ensure_dir(const std::string& out) {
  std::filesystem::path dir(out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) throw DataError("cannot create output directory " + out);
  return dir;
}

inline std::string journal_path(const RunConfig& cfg) {
  return cfg.state.empty() ? (std::filesystem::path(cfg.out) / "census.journal").string() : cfg.state;
}

}  // namespace detail

inline int cmd_census(const RunConfig& cfg, std::ostream& log) {
  auto dir = detail::ensure_dir(cfg.out);
  CensusOptions opt;
  opt.cutoff = cfg.max_crossings;
  opt.workers = cfg.workers;
  opt.journal = detail::journal_path(cfg);
  opt.resume = cfg.resume;
  opt.log = [&](const std::string& s) { log << s << "\n"; };
  CensusState st = run_census(opt);
  auto counts = survivor_counts(st);
  detail::write_file(dir / ("counts." + cfg.format), counts_sheet(counts), cfg.format);
  detail::write_file(dir / ("knots." + cfg.format), knots_sheet(knot_records(st)), cfg.format);
  for (auto [n, c] : counts)
    log << n << " crossings: " << c << (n <= cfg.max_crossings - 2 ? "" : " (upper bound)") << "\n";
  return kExitOk;
}

inline int cmd_invariants(const RunConfig& cfg, std::ostream& log) {
  std::vector<KnotRecord> knots;
  if (!cfg.knots.empty()) {
    std::ifstream in(cfg.knots, std::ios::binary);
    if (!in) throw DataError("cannot read knots file " + cfg.knots);
    knots = knots_from_sheet(read_sheet(in));
  } else if (!cfg.state.empty()) {
    knots = knot_records(replay(cfg.state, cfg.max_crossings));
  } else {
    throw DataError("invariants needs --knots FILE or --state FILE");
  }
  auto dir = detail::ensure_dir(cfg.out);
  detail::write_file(dir / ("invariants." + cfg.format), invariants_sheet(knots, cfg.linear_max, cfg.tables == "builtin"),
                     cfg.format);
  log << knots.size() << " knots\n";
  return kExitOk;
}

inline int cmd_reduce(const RunConfig& cfg, std::ostream& out) {
  Name nm;
  try {
    nm = parse_name(cfg.name);
  } catch (const ParseError& e) {
    throw DataError(std::string("cannot parse name: ") + e.what());
  }
  if (!is_realizable(nm)) throw DataError("name is not realizable in the plane");
  for (const Name& r : reduce(nm)) out << format_name(r) << "\n";
  return kExitOk;
}

// Maps exceptions to exit codes.
inline int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "census") return cmd_census(cfg, err);
    if (cfg.command == "invariants") return cmd_invariants(cfg, err);
    if (cfg.command == "reduce") return cmd_reduce(cfg, out);
    err << "unknown command " << cfg.command << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const CensusError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace knot
