#include "alphafair/population_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "alphafair/errors.h"
#include "alphafair/table.h"

namespace alphafair {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& text, std::size_t line_no, const char* what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw InputError("line " + std::to_string(line_no) + ": invalid " + what + " '" + text + "'");
  }
  return value;
}

bool parse_flag(const std::string& text, std::size_t line_no, const char* what) {
  if (text == "0") return false;
  if (text == "1") return true;
  throw InputError("line " + std::to_string(line_no) + ": " + what + " must be 0 or 1, got '" + text + "'");
}

Individual make_individual(std::string id, double a, double b, bool z, bool y, std::size_t record) {
  if (id.empty()) throw InputError("record " + std::to_string(record) + ": empty id");
  Individual person;
  person.id = std::move(id);
  try {
    person.utility = UtilityPair(a, b);
  } catch (const DomainError& e) {
    throw DomainError("individual '" + person.id + "': " + e.what());
  }
  person.is_protected = z;
  person.qualified = y;
  return person;
}

void check_unique_ids(const std::vector<Individual>& people) {
  std::unordered_set<std::string> seen;
  for (const Individual& p : people) {
    if (!seen.insert(p.id).second) throw InputError("duplicate id '" + p.id + "'");
  }
}

}  // namespace

std::vector<Individual> read_population_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (line_no == 0 || trim(line).empty()) throw InputError("population CSV is empty");
  std::string header = trim(line);
  if (header.rfind("\xEF\xBB\xBF", 0) == 0) header.erase(0, 3);
  if (split_commas(header) != std::vector<std::string>{"id", "a", "b", "z", "y"}) {
    throw InputError("population CSV header must be 'id,a,b,z,y', got '" + header + "'");
  }

  std::vector<Individual> people;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split_commas(line);
    if (f.size() != 5) {
      throw InputError("line " + std::to_string(line_no) + ": expected 5 fields, got " +
                       std::to_string(f.size()));
    }
    people.push_back(make_individual(f[0], parse_double(f[1], line_no, "a"),
                                     parse_double(f[2], line_no, "b"), parse_flag(f[3], line_no, "z"),
                                     parse_flag(f[4], line_no, "y"), line_no));
  }
  check_unique_ids(people);
  return people;
}

std::vector<Individual> read_population_json(std::istream& is) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("population JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InputError("population JSON must be an array of objects");

  std::vector<Individual> people;
  std::size_t record = 0;
  for (const auto& item : doc) {
    ++record;
    try {
      const auto& id = item.at("id");
      std::string id_text = id.is_string() ? id.get<std::string>() : id.dump();
      auto flag = [&](const char* key) {
        const auto& v = item.at(key);
        if (v.is_boolean()) return v.get<bool>();
        const int n = v.get<int>();
        if (n != 0 && n != 1) throw InputError(std::string(key) + " must be 0 or 1");
        return n == 1;
      };
      people.push_back(make_individual(std::move(id_text), item.at("a").get<double>(),
                                       item.at("b").get<double>(), flag("z"), flag("y"), record));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("population JSON record " + std::to_string(record) + ": " + e.what());
    }
  }
  check_unique_ids(people);
  return people;
}

std::vector<Individual> read_population_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open population file '" + path.string() + "'");
  if (path.extension() == ".json") return read_population_json(in);
  return read_population_csv(in);
}

void write_population_csv(std::ostream& os, std::span<const Individual> population) {
  os << "id,a,b,z,y\n";
  for (const Individual& p : population) {
    os << p.id << ',' << format_number(p.utility.benefit) << ',' << format_number(p.utility.baseline)
       << ',' << (p.is_protected ? 1 : 0) << ',' << (p.qualified ? 1 : 0) << '\n';
  }
}

void write_population_json(std::ostream& os, std::span<const Individual> population) {
  Table table;
  table.columns = {"id", "a", "b", "z", "y"};
  for (const Individual& p : population) {
    table.add_row({p.id, p.utility.benefit, p.utility.baseline,
                   std::int64_t{p.is_protected ? 1 : 0}, std::int64_t{p.qualified ? 1 : 0}});
  }
  write_json(os, table);
}

}  // namespace alphafair
