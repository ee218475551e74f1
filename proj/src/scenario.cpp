#include "cgsim/scenario.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace cgsim {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

class Section {
 public:
  Section() = default;
  Section(std::string name, int line) : name_(std::move(name)), line_(line) {}

  void put(const std::string& key, std::string value, int line) {
    if (entries_.contains(key)) throw ParseError(line, "duplicate key '" + key + "' in [" + name_ + "]");
    entries_[key] = {std::move(value), line, false};
  }

  bool has(const std::string& key) const { return entries_.contains(key); }
  int line() const { return line_; }
  int line_of(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? line_ : it->second.line;
  }

  const Entry* find(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  const Entry& require(const std::string& key) {
    if (const Entry* e = find(key)) return *e;
    throw ParseError(line_, "missing key '" + key + "' in [" + name_ + "]");
  }

  void reject_unused() const {
    for (const auto& [key, e] : entries_) {
      if (!e.used) throw ParseError(e.line, "unknown key '" + key + "' in [" + name_ + "]");
    }
  }

 private:
  std::string name_;
  int line_ = 0;
  std::map<std::string, Entry> entries_;
};

std::int64_t to_int(const Entry& e) {
  std::int64_t v = 0;
  const auto* first = e.value.data();
  const auto* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError(e.line, "malformed integer '" + e.value + "'");
  return v;
}

std::uint64_t to_u64(const Entry& e) {
  std::uint64_t v = 0;
  const auto* first = e.value.data();
  const auto* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError(e.line, "malformed unsigned integer '" + e.value + "'");
  return v;
}

double parse_double(std::string_view text, int line) {
  const std::string s(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ParseError(line, "malformed number '" + s + "'");
  }
  return v;
}

double to_double(const Entry& e) { return parse_double(e.value, e.line); }

double to_probability(const Entry& e) {
  const double v = to_double(e);
  if (v < 0.0 || v > 1.0) throw ParseError(e.line, "probability out of range");
  return v;
}

std::vector<int> to_int_list(const Entry& e) {
  std::vector<int> out;
  if (trim(e.value).empty()) return out;
  for (auto part : split(e.value, ',')) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size()) {
      throw ParseError(e.line, "malformed integer list '" + e.value + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> to_double_list(const Entry& e) {
  std::vector<double> out;
  if (trim(e.value).empty()) return out;
  for (auto part : split(e.value, ',')) out.push_back(parse_double(part, e.line));
  return out;
}

int to_int32(const Entry& e) {
  const auto v = to_int(e);
  if (v < INT32_MIN || v > INT32_MAX) throw ParseError(e.line, "integer out of range '" + e.value + "'");
  return static_cast<int>(v);
}

struct Document {
  std::map<std::string, Section> sections;
};

Document tokenize(std::string_view text) {
  Document doc;
  Section* current = nullptr;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      const bool known = name == "config" || name == "traffic" || name == "channel" || name == "shared" ||
                         name == "sim" || (name.starts_with("multi.") && name.size() > 6 &&
                                           name.find_first_not_of("0123456789", 6) == std::string::npos);
      if (!known) throw ParseError(line_no, "unknown section [" + name + "]");
      if (doc.sections.contains(name)) throw ParseError(line_no, "duplicate section [" + name + "]");
      current = &doc.sections.emplace(name, Section(name, line_no)).first->second;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    if (!current) throw ParseError(line_no, "key outside of a section");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError(line_no, "empty key");
    current->put(key, std::string(trim(line.substr(eq + 1))), line_no);
  }
  return doc;
}

// Offsets come either explicitly or as (tos, gap, start).
std::vector<int> read_offsets(Section& sec, int gap) {
  const Entry* offsets = sec.find("offsets");
  const Entry* tos = sec.find("tos");
  const Entry* start = sec.find("start");
  if (offsets && tos) throw ParseError(tos->line, "'offsets' and 'tos' are mutually exclusive");
  if (offsets) {
    if (start) throw ParseError(start->line, "'start' only applies with 'tos'");
    return to_int_list(*offsets);
  }
  if (!tos) throw ParseError(sec.line(), "missing key 'offsets' (or 'tos')");
  const int count = to_int32(*tos);
  if (count < 1) throw ParseError(tos->line, "tos must be positive");
  return generate_offsets(count, gap, start ? to_int32(*start) : 0);
}

SchemeKind read_scheme(const Entry& e, Document& doc, const CgConfig& base, bool member);

SharedParams read_shared(Document& doc) {
  SharedParams sp;
  auto it = doc.sections.find("shared");
  if (it == doc.sections.end()) return sp;
  Section& sec = it->second;
  if (const Entry* e = sec.find("lbt_delay")) sp.lbt_delay_slots = to_int32(*e);
  if (const Entry* e = sec.find("collision")) sp.collision_prob = to_probability(*e);
  if (const Entry* e = sec.find("contenders")) sp.contenders = to_int32(*e);
  if (const Entry* e = sec.find("tx_prob")) sp.tx_prob = to_probability(*e);
  return sp;
}

std::vector<CgConfig> read_members(Document& doc, const CgConfig& base) {
  std::map<int, std::string> names;
  for (const auto& [name, sec] : doc.sections) {
    if (name.starts_with("multi.")) names.emplace(std::stoi(name.substr(6)), name);
  }
  std::vector<CgConfig> members;
  int expected = 0;
  for (const auto& [index, name] : names) {
    Section& sec = doc.sections.at(name);
    if (index != expected++) throw ParseError(sec.line(), "multi sections must be numbered 0, 1, 2, ...");
    CgConfig m = base;
    m.scheme = BaselineFirstTo{};
    const int gap = sec.has("gap") ? to_int32(*sec.find("gap")) : 0;
    m.to_offsets = read_offsets(sec, gap);
    if (const Entry* e = sec.find("k")) m.rep_count = to_int32(*e);
    if (const Entry* e = sec.find("pattern")) m.rv_pattern = RvPattern(to_int_list(*e));
    if (const Entry* e = sec.find("mask")) {
      const auto v = to_int_list(*e);
      m.availability_mask = {v.begin(), v.end()};
    }
    if (const Entry* e = sec.find("scheme")) m.scheme = read_scheme(*e, doc, base, true);
    sec.reject_unused();
    members.push_back(std::move(m));
  }
  return members;
}

SchemeKind read_scheme(const Entry& e, Document& doc, const CgConfig& base, bool member) {
  if (e.value == "first_to") return BaselineFirstTo{};
  if (e.value == "start_rv0") return BaselineStartAtRv0{};
  if (e.value == "flexible") return FlexibleOffset{};
  if (e.value == "shared") return SharedAssist{read_shared(doc)};
  if (e.value == "multi" && !member) return MultiConfig{read_members(doc, base)};
  throw ParseError(e.line, "unknown scheme '" + e.value + "'");
}

TrafficModel read_traffic(Section& sec) {
  const Entry& kind = sec.require("kind");
  if (kind.value == "always") return AlwaysAtSlot{to_int32(sec.require("slot"))};
  if (kind.value == "uniform") return UniformOverSlots{to_int32(sec.require("lo")), to_int32(sec.require("hi"))};
  if (kind.value == "geometric") return GeometricDelay{to_double(sec.require("gamma"))};
  if (kind.value == "pmf") {
    ExplicitPmf pmf;
    pmf.p_o = to_probability(sec.require("p_o"));
    const Entry& p = sec.require("p");
    pmf.p = to_double_list(p);
    for (double v : pmf.p) {
      if (v < 0.0 || v > 1.0) throw ParseError(p.line, "probability out of range");
    }
    return pmf;
  }
  throw ParseError(kind.line, "unknown traffic kind '" + kind.value + "'");
}

RvDecodeTable read_table(const Entry& e) {
  const auto parts = split(e.value, ',');
  if (parts.size() != 16) throw ParseError(e.line, "rv_table needs 16 entries");
  RvDecodeTable t;
  for (std::size_t m = 0; m < 16; ++m) {
    if (parts[m] == "-") {
      t.min_reps[m] = RvDecodeTable::kNever;
      continue;
    }
    int v = 0;
    auto [ptr, ec] = std::from_chars(parts[m].data(), parts[m].data() + parts[m].size(), v);
    if (ec != std::errc() || ptr != parts[m].data() + parts[m].size() || v < 1 || v > 64) {
      throw ParseError(e.line, "malformed rv_table entry '" + std::string(parts[m]) + "'");
    }
    t.min_reps[m] = static_cast<std::uint8_t>(v);
  }
  return t;
}

int line_for_field(const Document& doc, const std::string& field) {
  if (field.starts_with("multi.")) {
    const auto dot = field.find('.', 6);
    const std::string sec = field.substr(0, dot);
    auto it = doc.sections.find(sec);
    if (it == doc.sections.end()) return 0;
    return dot == std::string::npos ? it->second.line() : it->second.line_of(field.substr(dot + 1));
  }
  const auto& config = doc.sections.at("config");
  if (field == "shared") {
    auto it = doc.sections.find("shared");
    return it != doc.sections.end() ? it->second.line() : config.line_of("scheme");
  }
  if (field == "offsets" && !config.has("offsets")) return config.line_of("tos");
  return config.line_of(field);
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Document doc = tokenize(text);
  for (const char* required : {"config", "traffic", "channel"}) {
    if (!doc.sections.contains(required)) throw ParseError(0, std::string("missing section [") + required + "]");
  }

  Scenario s;
  Section& cfg = doc.sections.at("config");
  CgConfig& c = s.config;
  c.period_slots = to_int32(cfg.require("period"));
  if (const Entry* e = cfg.find("gap")) s.gap = to_int32(*e);
  c.to_offsets = read_offsets(cfg, s.gap);
  c.rep_count = to_int32(cfg.require("k"));
  c.rv_pattern = RvPattern(to_int_list(cfg.require("pattern")));
  c.latency_budget_slots = c.period_slots;
  if (const Entry* e = cfg.find("latency_budget")) c.latency_budget_slots = to_int32(*e);
  if (const Entry* e = cfg.find("deferral")) c.max_periods_deferral = to_int32(*e);
  if (const Entry* e = cfg.find("mask")) {
    const auto v = to_int_list(*e);
    c.availability_mask = {v.begin(), v.end()};
  }
  const Entry& scheme = cfg.require("scheme");
  c.scheme = read_scheme(scheme, doc, c, false);
  cfg.reject_unused();

  if (!std::holds_alternative<SharedAssist>(c.scheme) && doc.sections.contains("shared")) {
    bool member_shared = false;
    if (const auto* multi = std::get_if<MultiConfig>(&c.scheme)) {
      for (const auto& m : multi->configs) member_shared |= std::holds_alternative<SharedAssist>(m.scheme);
    }
    if (!member_shared) throw ParseError(doc.sections.at("shared").line(), "[shared] given but no scheme uses it");
  }
  for (const auto& [name, sec] : doc.sections) {
    if (name.starts_with("multi.") && !std::holds_alternative<MultiConfig>(c.scheme)) {
      throw ParseError(sec.line(), "[" + name + "] requires scheme = multi");
    }
  }
  if (auto it = doc.sections.find("shared"); it != doc.sections.end()) it->second.reject_unused();

  Section& traffic = doc.sections.at("traffic");
  s.traffic = read_traffic(traffic);
  traffic.reject_unused();

  Section& ch = doc.sections.at("channel");
  s.channel.epsilon = to_probability(ch.require("epsilon"));
  if (const Entry* e = ch.find("decode")) {
    if (e->value == "any_success") {
      s.channel.decode_model.kind = DecodeKind::AnySuccess;
    } else if (e->value == "rv_aware") {
      s.channel.decode_model.kind = DecodeKind::RvAware;
    } else {
      throw ParseError(e->line, "unknown decode model '" + e->value + "'");
    }
  }
  if (const Entry* e = ch.find("rv_table")) s.channel.decode_model.table = read_table(*e);
  ch.reject_unused();

  if (auto it = doc.sections.find("sim"); it != doc.sections.end()) {
    Section& sim = it->second;
    if (const Entry* e = sim.find("id")) s.id = e->value;
    if (const Entry* e = sim.find("packets")) s.packets = to_int(*e);
    if (const Entry* e = sim.find("seed")) s.master_seed = to_u64(*e);
    if (const Entry* e = sim.find("slot_ms")) s.slot_duration_ms = to_double(*e);
    if (const Entry* e = sim.find("ci_z")) s.ci_z = to_double(*e);
    if (const Entry* e = sim.find("threads")) s.threads = to_int32(*e);
    sim.reject_unused();
  }

  resolve_shared_collision(s);

  for (const auto& v : validate_config(s.config)) throw ParseError(line_for_field(doc, v.field), v.message);
  for (const auto& m : traffic_violations(s.traffic, s.config)) throw ParseError(traffic.line_of("kind"), m);
  for (const auto& m : scenario_violations(s)) throw ParseError(0, m);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class Range>
std::string join(const Range& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ",";
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) {
      out += num(v);
    } else {
      out += std::to_string(v);
    }
  }
  return out;
}

void emit_member_keys(std::ostringstream& out, const CgConfig& c) {
  out << "offsets = " << join(c.to_offsets) << "\n";
  out << "k = " << c.rep_count << "\n";
  out << "pattern = " << join(c.rv_pattern.ids()) << "\n";
  out << "scheme = " << scheme_name(c.scheme) << "\n";
  out << "mask = " << join(c.availability_mask) << "\n";
}

const SharedParams* find_shared(const CgConfig& c) {
  if (const auto* sa = std::get_if<SharedAssist>(&c.scheme)) return &sa->shared;
  if (const auto* multi = std::get_if<MultiConfig>(&c.scheme)) {
    for (const auto& m : multi->configs) {
      if (const auto* sa = std::get_if<SharedAssist>(&m.scheme)) return &sa->shared;
    }
  }
  return nullptr;
}

}  // namespace

std::string to_scenario_text(const Scenario& s) {
  std::ostringstream out;
  const CgConfig& c = s.config;
  out << "[config]\n";
  out << "period = " << c.period_slots << "\n";
  out << "gap = " << s.gap << "\n";
  emit_member_keys(out, c);
  out << "latency_budget = " << c.latency_budget_slots << "\n";
  out << "deferral = " << c.max_periods_deferral << "\n";

  if (const SharedParams* sp = find_shared(c)) {
    out << "\n[shared]\n";
    out << "lbt_delay = " << sp->lbt_delay_slots << "\n";
    if (sp->collision_prob) out << "collision = " << num(*sp->collision_prob) << "\n";
    if (sp->contenders) out << "contenders = " << *sp->contenders << "\n";
    if (sp->tx_prob) out << "tx_prob = " << num(*sp->tx_prob) << "\n";
  }
  if (const auto* multi = std::get_if<MultiConfig>(&c.scheme)) {
    for (std::size_t m = 0; m < multi->configs.size(); ++m) {
      out << "\n[multi." << m << "]\n";
      emit_member_keys(out, multi->configs[m]);
    }
  }

  out << "\n[traffic]\n";
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, AlwaysAtSlot>) {
          out << "kind = always\nslot = " << t.slot << "\n";
        } else if constexpr (std::is_same_v<T, UniformOverSlots>) {
          out << "kind = uniform\nlo = " << t.lo << "\nhi = " << t.hi << "\n";
        } else if constexpr (std::is_same_v<T, GeometricDelay>) {
          out << "kind = geometric\ngamma = " << num(t.mean_arrival_slots) << "\n";
        } else {
          out << "kind = pmf\np_o = " << num(t.p_o) << "\np = " << join(t.p) << "\n";
        }
      },
      s.traffic);

  out << "\n[channel]\n";
  out << "epsilon = " << num(s.channel.epsilon) << "\n";
  const auto& dm = s.channel.decode_model;
  out << "decode = " << (dm.kind == DecodeKind::AnySuccess ? "any_success" : "rv_aware") << "\n";
  if (dm.table != RvDecodeTable::standard()) {
    out << "rv_table = ";
    for (std::size_t m = 0; m < 16; ++m) {
      if (m) out << ",";
      if (dm.table.min_reps[m] == RvDecodeTable::kNever) {
        out << "-";
      } else {
        out << static_cast<int>(dm.table.min_reps[m]);
      }
    }
    out << "\n";
  }

  out << "\n[sim]\n";
  out << "id = " << s.id << "\n";
  out << "packets = " << s.packets << "\n";
  out << "seed = " << s.master_seed << "\n";
  out << "slot_ms = " << num(s.slot_duration_ms) << "\n";
  out << "ci_z = " << num(s.ci_z) << "\n";
  out << "threads = " << s.threads << "\n";
  return out.str();
}

SweepSpec parse_sweep(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw Error("sweep must look like param=v1,v2,... or param=start:stop:step");
  SweepSpec spec;
  spec.parameter = std::string(trim(text.substr(0, eq)));
  const auto values = trim(text.substr(eq + 1));
  const auto& known = sweepable_parameters();
  if (std::find(known.begin(), known.end(), spec.parameter) == known.end()) {
    throw Error("parameter '" + spec.parameter + "' is not sweepable");
  }
  if (values.find(':') != std::string_view::npos) {
    const auto parts = split(values, ':');
    if (parts.size() != 3) throw Error("range sweep needs start:stop:step");
    const double start = parse_double(parts[0], 0);
    const double stop = parse_double(parts[1], 0);
    const double step = parse_double(parts[2], 0);
    if (!(step > 0.0) || stop < start) throw Error("range sweep needs step > 0 and stop >= start");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) spec.values.push_back(start + static_cast<double>(i) * step);
  } else {
    for (auto part : split(values, ',')) spec.values.push_back(parse_double(part, 0));
  }
  if (spec.values.empty()) throw Error("sweep has no values");
  return spec;
}

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> params = {
      "channel.epsilon",       "shared.collision", "shared.lbt_delay", "config.T",
      "config.gap",            "config.k",         "config.period",    "config.latency_budget",
      "config.deferral",       "traffic.gamma",    "sim.packets",
  };
  return params;
}

Scenario apply_sweep(const Scenario& base, const std::string& parameter, double value) {
  Scenario s = base;
  auto as_int = [&]() {
    if (std::floor(value) != value || std::abs(value) > 1e9) {
      throw Error("parameter '" + parameter + "' needs an integer value");
    }
    return static_cast<int>(value);
  };
  auto regenerate = [&](int count, int gap) {
    const int start = s.config.to_offsets.empty() ? 0 : s.config.to_offsets.front();
    s.config.to_offsets = generate_offsets(count, gap, start);
    s.gap = gap;
  };
  auto shared = [&]() -> SharedParams& {
    auto* sa = std::get_if<SharedAssist>(&s.config.scheme);
    if (!sa) throw Error("parameter '" + parameter + "' needs scheme = shared");
    return sa->shared;
  };

  if (parameter == "channel.epsilon") {
    s.channel.epsilon = value;
  } else if (parameter == "shared.collision") {
    SharedParams& sp = shared();
    sp.collision_prob = value;
    sp.contenders.reset();
    sp.tx_prob.reset();
  } else if (parameter == "shared.lbt_delay") {
    shared().lbt_delay_slots = as_int();
  } else if (parameter == "config.T") {
    regenerate(as_int(), s.gap);
  } else if (parameter == "config.gap") {
    regenerate(s.config.to_count(), as_int());
  } else if (parameter == "config.k") {
    s.config.rep_count = as_int();
  } else if (parameter == "config.period") {
    s.config.period_slots = as_int();
  } else if (parameter == "config.latency_budget") {
    s.config.latency_budget_slots = as_int();
  } else if (parameter == "config.deferral") {
    s.config.max_periods_deferral = as_int();
  } else if (parameter == "traffic.gamma") {
    auto* g = std::get_if<GeometricDelay>(&s.traffic);
    if (!g) throw Error("parameter 'traffic.gamma' needs kind = geometric");
    g->mean_arrival_slots = value;
  } else if (parameter == "sim.packets") {
    if (std::floor(value) != value) throw Error("parameter 'sim.packets' needs an integer value");
    s.packets = static_cast<std::int64_t>(value);
  } else {
    throw Error("parameter '" + parameter + "' is not sweepable");
  }

  resolve_shared_collision(s);
  if (auto v = scenario_violations(s); !v.empty()) {
    throw Error("sweep " + parameter + "=" + num(value) + ": " + v.front());
  }
  return s;
}

}  // namespace cgsim
