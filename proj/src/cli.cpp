#include "chow/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "chow/checks.hpp"
#include "chow/error.hpp"
#include "json.hpp"

namespace chow::cli {

using nlohmann::json;

namespace {

constexpr int kWeightedTable = 1;
constexpr int kLinesTable = 3;
constexpr int kConicsTable = 4;

ManifestEntry cell(int table, int k, int a, int b, const char* value) {
  return ManifestEntry{table, k, Incidence{a, b, k - a - b}, value};
}

std::string incidence_text(const std::optional<Incidence>& inc) {
  if (!inc) return "-";
  return std::to_string(inc->a) + "," + std::to_string(inc->b) + "," + std::to_string(inc->c);
}

std::string cell_name(int table, int k, const std::optional<Incidence>& inc) {
  std::string s = "table " + std::to_string(table) + " k=" + std::to_string(k);
  if (inc) s += " (" + incidence_text(inc) + ")";
  return s;
}

json incidence_json(const std::optional<Incidence>& inc) {
  if (!inc) return nullptr;
  return json::array({inc->a, inc->b, inc->c});
}

std::optional<Incidence> incidence_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  if (!j.is_array() || j.size() != 3) throw InvalidInput("incidence must be null or [a, b, c]");
  return Incidence{j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool is_usage_error(const Error& e) {
  return dynamic_cast<const InvalidInput*>(&e) || dynamic_cast<const InvalidWeight*>(&e) ||
         dynamic_cast<const InvalidIncidence*>(&e) || dynamic_cast<const UnsupportedRank*>(&e) ||
         dynamic_cast<const RangeError*>(&e);
}

template <class Task>
void parallel_for(std::size_t count, int threads, Task&& task) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

OutputRecord to_record(const InvariantResult& r) {
  OutputRecord out;
  out.family = family_name(r.request.family);
  out.k = r.request.k;
  out.incidence = r.request.incidence;
  out.value = to_decimal(r.value);
  if (r.curve_count) out.curve_count = to_decimal(*r.curve_count);
  out.elapsed_ms = std::lround(r.elapsed_ms);
  return out;
}

std::optional<Format> parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  return std::nullopt;
}

std::string format_records(const std::vector<OutputRecord>& records, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::Json: {
      json array = json::array();
      for (const auto& r : records) {
        array.push_back(json{{"family", r.family},
                             {"k", r.k},
                             {"incidence", incidence_json(r.incidence)},
                             {"value", r.value},
                             {"curve_count", r.curve_count ? json(*r.curve_count) : json(nullptr)},
                             {"elapsed_ms", r.elapsed_ms}});
      }
      out << array.dump(2) << '\n';
      break;
    }
    case Format::Csv: {
      out << "family,k,a,b,c,value,curve_count\n";
      for (const auto& r : records) {
        out << csv_escape(r.family) << ',' << r.k << ',';
        if (r.incidence) {
          out << r.incidence->a << ',' << r.incidence->b << ',' << r.incidence->c;
        } else {
          out << ",,";
        }
        out << ',' << r.value << ',' << r.curve_count.value_or("") << '\n';
      }
      break;
    }
    case Format::Text: {
      std::vector<std::array<std::string, 6>> rows{{"family", "k", "a,b,c", "value", "curves", "ms"}};
      for (const auto& r : records) {
        rows.push_back({r.family, std::to_string(r.k), incidence_text(r.incidence), r.value,
                        r.curve_count.value_or("-"), std::to_string(r.elapsed_ms)});
      }
      std::array<std::size_t, 6> width{};
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
      }
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          const bool numeric = i == 1 || i >= 3;
          if (i) out << "  ";
          out << (numeric ? std::right : std::left) << std::setw(static_cast<int>(width[i])) << row[i];
        }
        out << '\n';
      }
      break;
    }
  }
  return out.str();
}

std::vector<OutputRecord> parse_json_records(const std::string& text) {
  std::vector<OutputRecord> out;
  try {
    const json array = json::parse(text);
    if (!array.is_array()) throw InvalidInput("expected a JSON array of records");
    for (const auto& j : array) {
      OutputRecord r;
      r.family = j.at("family").get<std::string>();
      r.k = j.at("k").get<int>();
      r.incidence = incidence_from_json(j.at("incidence"));
      r.value = j.at("value").get<std::string>();
      if (!j.at("curve_count").is_null()) r.curve_count = j.at("curve_count").get<std::string>();
      r.elapsed_ms = j.at("elapsed_ms").get<long>();
      out.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed records: ") + e.what());
  }
  return out;
}

std::vector<InvariantRequest> table_requests(int id) {
  std::vector<InvariantRequest> out;
  if (id == kWeightedTable) {
    for (int w : {1, 2, 4}) out.push_back(InvariantRequest::weighted_lines(w));
    return out;
  }
  if (id != kLinesTable && id != kConicsTable) throw InvalidInput("unknown table id " + std::to_string(id));
  for (int k = kMinDimension; k <= kMaxDimension; ++k) {
    for (int a = 1; 3 * a <= k; ++a) {
      for (int b = a; a + 2 * b <= k; ++b) {
        out.push_back(id == kLinesTable ? InvariantRequest::lines(k, a, b) : InvariantRequest::conics(k, a, b));
      }
    }
  }
  return out;
}

std::vector<OutputRecord> run_table(int id, int threads) {
  const auto requests = table_requests(id);
  std::vector<OutputRecord> records(requests.size());
  parallel_for(requests.size(), threads, [&](std::size_t i) { records[i] = to_record(evaluate(requests[i])); });
  return records;
}

const std::vector<ManifestEntry>& builtin_manifest() {
  static const std::vector<ManifestEntry> manifest = [] {
    std::vector<ManifestEntry> m{
        {kWeightedTable, 1, std::nullopt, "2875"},
        {kWeightedTable, 2, std::nullopt, "7884"},
        {kWeightedTable, 4, std::nullopt, "29504"},

        cell(3, 3, 1, 1, "2875"),
        cell(3, 4, 1, 1, "60480"),
        cell(3, 5, 1, 1, "1009792"),
        cell(3, 5, 1, 2, "1707797"),
        cell(3, 6, 1, 1, "15984640"),
        cell(3, 6, 1, 2, "37502976"),
        cell(3, 6, 2, 2, "59021312"),
        cell(3, 7, 1, 1, "253490796"),
        cell(3, 7, 1, 2, "763954092"),
        cell(3, 7, 1, 3, "1069047153"),
        cell(3, 7, 2, 2, "1579510449"),
        cell(3, 8, 1, 1, "4120776000"),
        cell(3, 8, 1, 2, "15274952000"),
        cell(3, 8, 1, 3, "27768048000"),
        cell(3, 8, 2, 2, "38922224000"),
        cell(3, 8, 2, 3, "51415320000"),
        cell(3, 9, 1, 1, "69407571816"),
        cell(3, 9, 1, 2, "307393401172"),
        cell(3, 9, 1, 3, "695221679878"),
        cell(3, 9, 1, 4, "905702054829"),
        cell(3, 9, 2, 2, "933207509234"),
        cell(3, 9, 2, 3, "1531516162891"),
        cell(3, 9, 3, 3, "1919344441597"),
        cell(3, 10, 1, 1, "1217507106816"),
        cell(3, 10, 1, 2, "6306655500288"),
        cell(3, 10, 1, 3, "17225362851840"),
        cell(3, 10, 1, 4, "28015971489792"),
        cell(3, 10, 2, 2, "22314511245312"),
        cell(3, 10, 2, 3, "44023827234816"),
        cell(3, 10, 2, 4, "54814435872768"),
        cell(3, 10, 3, 3, "65733143224320"),

        cell(4, 3, 1, 1, "4874000"),
        cell(4, 4, 1, 1, "1763536320"),
        cell(4, 5, 1, 1, "488959144352"),
        cell(4, 5, 1, 2, "1021575491286"),
        cell(4, 6, 1, 1, "133588638826496"),
        cell(4, 6, 1, 2, "448681408315392"),
        cell(4, 6, 2, 2, "821654025830400"),
        cell(4, 7, 1, 1, "39031273362637440"),
        cell(4, 7, 1, 2, "187554590257349088"),
        cell(4, 7, 1, 3, "312074852318965368"),
        cell(4, 7, 2, 2, "506855012110118424"),
        cell(4, 8, 1, 1, "12607965435718224000"),
        cell(4, 8, 1, 2, "80684596772238448000"),
        cell(4, 8, 1, 3, "200581960800610752000"),
        cell(4, 8, 2, 2, "295035175517918176000"),
        cell(4, 8, 2, 3, "444475303469701680000"),
        cell(4, 9, 1, 1, "4565325719860021608624"),
        cell(4, 9, 1, 2, "37005001823802188657624"),
        cell(4, 9, 1, 3, "127922335050535174614916"),
        cell(4, 9, 1, 4, "193693669320390878077186"),
        cell(4, 9, 2, 2, "173901546566279203106468"),
        cell(4, 9, 2, 3, "364629304647788940660824"),
        cell(4, 9, 3, 3, "498705676383823268404990"),
        cell(4, 10, 1, 1, "1861791822397620935737344"),
        cell(4, 10, 1, 2, "18415607624138339954786304"),
        cell(4, 10, 1, 3, "83885220561474498867757056"),
        cell(4, 10, 1, 4, "179982840924749584358866944"),
        cell(4, 10, 2, 2, "107227899142191919158312960"),
        cell(4, 10, 2, 3, "297755098999730079369412608"),
        cell(4, 10, 2, 4, "417950364467570984815214592"),
        cell(4, 10, 3, 3, "527556832251612742800359424"),
    };
    for (auto& e : m) {
      if (e.incidence) e.incidence = e.incidence->sorted();
    }
    return m;
  }();
  return manifest;
}

std::string manifest_to_json(const std::vector<ManifestEntry>& manifest) {
  json array = json::array();
  for (const auto& e : manifest) {
    array.push_back(json{{"table", e.table}, {"k", e.k}, {"incidence", incidence_json(e.incidence)}, {"value", e.value}});
  }
  return array.dump(2) + "\n";
}

std::vector<ManifestEntry> manifest_from_json(const std::string& text) {
  std::vector<ManifestEntry> out;
  try {
    const json array = json::parse(text);
    if (!array.is_array()) throw InvalidInput("manifest must be a JSON array");
    for (const auto& j : array) {
      ManifestEntry e;
      e.table = j.at("table").get<int>();
      e.k = j.at("k").get<int>();
      e.incidence = incidence_from_json(j.at("incidence"));
      if (e.incidence) e.incidence = e.incidence->sorted();
      e.value = j.at("value").get<std::string>();
      out.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed manifest: ") + e.what());
  }
  return out;
}

std::optional<Scope> parse_scope(const std::string& s) {
  if (s == "all") return Scope::All;
  if (s == "lines") return Scope::Lines;
  if (s == "conics") return Scope::Conics;
  if (s == "engine") return Scope::Engine;
  return std::nullopt;
}

int run_verify(Scope scope, const std::vector<ManifestEntry>& manifest, int threads, std::ostream& out) {
  std::map<std::tuple<int, int, std::optional<Incidence>>, std::string> expected;
  for (const auto& e : manifest) expected[{e.table, e.k, e.incidence}] = e.value;

  bool ok = true;
  std::vector<int> tables;
  if (scope == Scope::All || scope == Scope::Lines) tables = {kWeightedTable, kLinesTable};
  if (scope == Scope::All || scope == Scope::Conics) tables.push_back(kConicsTable);

  for (int id : tables) {
    const auto requests = table_requests(id);
    std::vector<std::string> computed(requests.size());
    std::vector<std::string> errors(requests.size());
    parallel_for(requests.size(), threads, [&](std::size_t i) {
      try {
        computed[i] = to_record(evaluate(requests[i])).value;
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    });
    std::size_t matched = 0;
    for (std::size_t i = 0; i < requests.size(); ++i) {
      const auto& r = requests[i];
      const std::optional<Incidence> key = r.incidence ? std::optional(r.incidence->sorted()) : std::nullopt;
      const std::string name = cell_name(id, r.k, key);
      const auto it = expected.find({id, r.k, key});
      if (!errors[i].empty()) {
        out << "MISMATCH " << name << ": error: " << errors[i] << '\n';
      } else if (it == expected.end()) {
        out << "MISMATCH " << name << ": no expected value, computed " << computed[i] << '\n';
      } else if (it->second != computed[i]) {
        out << "MISMATCH " << name << ": expected " << it->second << ", computed " << computed[i] << '\n';
      } else {
        ++matched;
      }
    }
    const bool pass = matched == requests.size();
    ok = ok && pass;
    out << (pass ? "PASS" : "FAIL") << " table " << id << ": " << matched << "/" << requests.size()
        << " values match\n";
  }

  std::vector<checks::CheckResult> results;
  if (scope == Scope::All || scope == Scope::Lines) results.push_back(checks::fact_identity());
  if (scope == Scope::All || scope == Scope::Conics) results.push_back(checks::conic_normalization());
  if (scope == Scope::All || scope == Scope::Engine) {
    for (auto& r : checks::engine_suite()) results.push_back(std::move(r));
  }
  for (const auto& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << ' ' << r.name << ": " << r.checked << " checks\n";
    for (const auto& f : r.failures) out << "  " << f << '\n';
    ok = ok && r.passed;
  }
  out << "verify: " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kSuccess : kMismatch;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact intersection numbers for lines and conics on Calabi-Yau hypersurfaces", "chowcalc"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for table cells")->check(CLI::PositiveNumber);

  std::string format_name = "text";
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  };

  int weight = 0;
  auto* weighted = app.add_subcommand("lines-weighted", "Lines on the weighted threefolds in P(w,1^4)");
  weighted->add_option("--weight", weight, "Weight of the special coordinate (2 or 4)")->required();
  add_format(weighted);

  int dim = 0;
  std::vector<int> incidence;
  auto* lines = app.add_subcommand("lines", "Gromov-Witten invariant n^a_b(1)");
  auto* conics = app.add_subcommand("conics", "Gromov-Witten invariant n^a_b(2)");
  for (auto* sub : {lines, conics}) {
    sub->add_option("--dim", dim, "Dimension k of the hypersurface of degree k+2")->required();
    sub->add_option("--incidence", incidence, "A,B (c = k - a - b)")->required()->delimiter(',')->expected(2);
    add_format(sub);
  }

  int table_id = 0;
  auto* table = app.add_subcommand("table", "Reproduce a whole table");
  table->add_option("--id", table_id, "1, 3 or 4")->required()->check(CLI::IsMember({1, 3, 4}));
  add_format(table);

  std::string scope_name = "all";
  std::string manifest_path;
  auto* verify = app.add_subcommand("verify", "Compare against the published values and run property checks");
  verify->add_option("--scope", scope_name, "all, lines, conics or engine")
      ->check(CLI::IsMember({"all", "lines", "conics", "engine"}));
  verify->add_option("--manifest", manifest_path, "JSON file of expected values replacing the built-in one")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    const Format format = *parse_format(format_name);
    if (*verify) {
      std::vector<ManifestEntry> manifest = builtin_manifest();
      if (!manifest_path.empty()) {
        std::ifstream in(manifest_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        manifest = manifest_from_json(buffer.str());
      }
      return run_verify(*parse_scope(scope_name), manifest, threads, out);
    }
    if (*table) {
      out << format_records(run_table(table_id, threads), format);
      return kSuccess;
    }
    InvariantRequest request;
    if (*weighted) {
      request = InvariantRequest::weighted_lines(weight);
    } else {
      request = *lines ? InvariantRequest::lines(dim, incidence[0], incidence[1])
                       : InvariantRequest::conics(dim, incidence[0], incidence[1]);
    }
    out << format_records({to_record(evaluate(request))}, format);
    return kSuccess;
  } catch (const Error& e) {
    err << "chowcalc: " << e.what() << '\n';
    return is_usage_error(e) ? kUsage : kMismatch;
  }
}

}  // namespace chow::cli
