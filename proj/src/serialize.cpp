#include "setval/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace setval::io {
namespace {

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t index) {
  return where + "/" + std::to_string(index);
}

const json& member(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where, "missing member \"" + key + "\"");
  return *it;
}

const json* optional_member(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

const json& array_of(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array");
  return j;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_plain(const std::string& s, const std::string& where) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(where, "not a number: \"" + s + "\"");
  }
  return v;
}

// Decimal or a/b.
double parse_scalar(std::string_view text, const std::string& where) {
  std::string s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) return parse_plain(s, where);
  double num = parse_plain(trim(s.substr(0, slash)), where);
  double den = parse_plain(trim(s.substr(slash + 1)), where);
  if (den == 0) throw ParseError(where, "zero denominator in \"" + s + "\"");
  return num / den;
}

double number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_scalar(j.get<std::string>(), where);
  throw ParseError(where, "expected a number");
}

bool boolean(const json& j, const std::string& where) {
  if (!j.is_boolean()) throw ParseError(where, "expected true or false");
  return j.get<bool>();
}

std::size_t count(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) throw ParseError(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

Point point(const json& j, const std::string& where) {
  Point p;
  std::size_t k = 0;
  for (const auto& v : array_of(j, where)) p.push_back(number(v, at(where, k++)));
  return p;
}

json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

json point_json(const Point& p) {
  json out = json::array();
  for (double v : p) out.push_back(number_json(v));
  return out;
}

// Runs f, turning library validation errors into ParseErrors at `where`.
template <class F>
auto guarded(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(where, e.what());
  }
}

}  // namespace

std::string format_interval(const FlaggedInterval& iv) {
  return std::string(iv.lo_closed() ? "[" : "(") + format_number(iv.lo()) + ", " +
         format_number(iv.hi()) + (iv.hi_closed() ? "]" : ")");
}

FlaggedInterval parse_interval(const std::string& text, const std::string& where) {
  std::string s = trim(text);
  if (s.size() < 5) throw ParseError(where, "malformed interval \"" + text + "\"");
  char open = s.front(), close = s.back();
  if ((open != '[' && open != '(') || (close != ']' && close != ')')) {
    throw ParseError(where, "interval must start with [ or ( and end with ] or ): \"" + text + "\"");
  }
  auto comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos) {
    throw ParseError(where, "interval needs exactly one comma: \"" + text + "\"");
  }
  double lo = parse_scalar(std::string_view(s).substr(1, comma - 1), where);
  double hi = parse_scalar(std::string_view(s).substr(comma + 1, s.size() - comma - 2), where);
  auto iv = FlaggedInterval::make(lo, hi, open == '[', close == ']');
  if (!iv) throw ParseError(where, "empty interval \"" + text + "\"");
  return *iv;
}

json to_json(const Box& b) {
  json out = json::array();
  for (const auto& iv : b) out.push_back(format_interval(iv));
  return out;
}

json to_json(const BoxSet& s) {
  json boxes = json::array();
  for (const auto& b : s.boxes()) boxes.push_back(to_json(b));
  return json{{"dim", s.dim()}, {"boxes", boxes}};
}

json to_json(const AffineForm& f) {
  if (f.is_constant()) return number_json(f.constant);
  return json{{"const", number_json(f.constant)}, {"coef", point_json(f.coef)}};
}

json to_json(const AffineBox& v) {
  if (v.is_simple()) {
    bool constant = true;
    for (const auto& d : v.dims()) {
      constant = constant && d.lower.front().form.is_constant() && d.upper.front().form.is_constant();
    }
    if (constant) {
      Point x(v.xdim(), 0.0);
      if (auto b = v.at(x)) return json{{"box", to_json(*b)}};
    }
    json dims = json::array();
    for (const auto& d : v.dims()) {
      dims.push_back({{"lo", to_json(d.lower.front().form)},
                      {"hi", to_json(d.upper.front().form)},
                      {"lo_closed", d.lower.front().closed},
                      {"hi_closed", d.upper.front().closed}});
    }
    return json{{"dims", dims}};
  }
  auto bounds = [](const std::vector<Bound>& side) {
    json out = json::array();
    for (const auto& b : side) out.push_back({{"form", to_json(b.form)}, {"closed", b.closed}});
    return out;
  };
  json dims = json::array();
  for (const auto& d : v.dims()) {
    dims.push_back({{"lower", bounds(d.lower)}, {"upper", bounds(d.upper)}});
  }
  json guards = json::array();
  for (const auto& g : v.guards()) guards.push_back({{"form", to_json(g.form)}, {"strict", g.strict}});
  return json{{"dims", dims}, {"guards", guards}};
}

json to_json(const PiecewiseMap& t) {
  json pieces = json::array();
  for (const auto& p : t.pieces()) {
    json value = json::array();
    for (const auto& v : p.value) value.push_back(to_json(v));
    pieces.push_back({{"region", to_json(p.region)}, {"value", value}});
  }
  return json{{"domain", to_json(t.domain())}, {"codim", t.codim()}, {"pieces", pieces}};
}

Box box_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return {parse_interval(j.get<std::string>(), where)};
  Box b;
  std::size_t k = 0;
  for (const auto& iv : array_of(j, where)) {
    if (!iv.is_string()) throw ParseError(at(where, k), "expected an interval string");
    b.push_back(parse_interval(iv.get<std::string>(), at(where, k)));
    ++k;
  }
  if (b.empty()) throw ParseError(where, "a box needs at least one interval");
  return b;
}

BoxSet boxset_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return BoxSet::of(box_from_json(j, where));
  const json* list = &j;
  std::optional<std::size_t> dim;
  std::string list_where = where;
  if (j.is_object()) {
    dim = count(member(j, "dim", where), at(where, "dim"));
    list = &member(j, "boxes", where);
    list_where = at(where, "boxes");
  }
  std::vector<Box> boxes;
  std::size_t k = 0;
  for (const auto& b : array_of(*list, list_where)) {
    boxes.push_back(box_from_json(b, at(list_where, k++)));
  }
  if (!dim) {
    if (boxes.empty()) throw ParseError(where, "an empty set needs {\"dim\": n, \"boxes\": []}");
    dim = boxes.front().size();
  }
  if (*dim == 0) throw ParseError(where, "dimension must be positive");
  return guarded(where, [&] { return BoxSet(*dim, std::move(boxes)); });
}

AffineForm form_from_json(const json& j, std::size_t xdim, const std::string& where) {
  if (j.is_number() || j.is_string()) return AffineForm::constant_form(number(j, where), xdim);
  AffineForm f{number(member(j, "const", where), at(where, "const")),
               point(member(j, "coef", where), at(where, "coef"))};
  if (f.coef.size() != xdim) {
    throw ParseError(at(where, "coef"), "expected " + std::to_string(xdim) + " coefficients");
  }
  return f;
}

AffineBox affine_box_from_json(const json& j, std::size_t xdim, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected a value object");
  if (const json* b = optional_member(j, "box")) {
    Box box = box_from_json(*b, at(where, "box"));
    return AffineBox::constant(box, xdim);
  }
  const std::string dw = at(where, "dims");
  std::vector<DimBounds> dims;
  std::size_t k = 0;
  for (const auto& d : array_of(member(j, "dims", where), dw)) {
    const std::string w = at(dw, k++);
    DimBounds out;
    if (d.contains("lo")) {
      const json* lc = optional_member(d, "lo_closed");
      const json* hc = optional_member(d, "hi_closed");
      out.lower.push_back({form_from_json(member(d, "lo", w), xdim, at(w, "lo")),
                           lc ? boolean(*lc, at(w, "lo_closed")) : true});
      out.upper.push_back({form_from_json(member(d, "hi", w), xdim, at(w, "hi")),
                           hc ? boolean(*hc, at(w, "hi_closed")) : true});
    } else {
      for (const char* side : {"lower", "upper"}) {
        const std::string sw = at(w, side);
        std::size_t m = 0;
        for (const auto& b : array_of(member(d, side, w), sw)) {
          const std::string bw = at(sw, m++);
          const json* c = optional_member(b, "closed");
          Bound bound{form_from_json(member(b, "form", bw), xdim, at(bw, "form")),
                      c ? boolean(*c, at(bw, "closed")) : true};
          (side[0] == 'l' ? out.lower : out.upper).push_back(std::move(bound));
        }
      }
    }
    dims.push_back(std::move(out));
  }
  std::vector<Guard> guards;
  if (const json* g = optional_member(j, "guards")) {
    const std::string gw = at(where, "guards");
    std::size_t m = 0;
    for (const auto& entry : array_of(*g, gw)) {
      const std::string ew = at(gw, m++);
      const json* s = optional_member(entry, "strict");
      guards.push_back({form_from_json(member(entry, "form", ew), xdim, at(ew, "form")),
                        s ? boolean(*s, at(ew, "strict")) : false});
    }
  }
  return guarded(where, [&] { return AffineBox(xdim, std::move(dims), std::move(guards)); });
}

PiecewiseMap map_from_json(const json& j, const std::string& where) {
  BoxSet domain = boxset_from_json(member(j, "domain", where), at(where, "domain"));
  std::size_t codim = count(member(j, "codim", where), at(where, "codim"));
  const std::string pw = at(where, "pieces");
  std::vector<Piece> pieces;
  std::size_t k = 0;
  for (const auto& p : array_of(member(j, "pieces", where), pw)) {
    const std::string w = at(pw, k++);
    Piece piece{box_from_json(member(p, "region", w), at(w, "region")), {}};
    const std::string vw = at(w, "value");
    std::size_t m = 0;
    for (const auto& v : array_of(member(p, "value", w), vw)) {
      AffineBox value = affine_box_from_json(v, domain.dim(), at(vw, m++));
      if (value.ydim() != codim) throw ParseError(vw, "value dimension differs from codim");
      piece.value.push_back(std::move(value));
    }
    pieces.push_back(std::move(piece));
  }
  return guarded(where, [&] { return PiecewiseMap(domain, codim, std::move(pieces)); });
}

namespace {

// Short values and arrays of scalars go on one line.
bool flat(const json& j) {
  if (j.is_primitive() || j.dump().size() <= 60) return true;
  return j.is_array() &&
         std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_primitive(); });
}

void pretty_into(std::string& out, const json& j, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  if (flat(j) || j.empty()) {
    out += j.dump(-1, ' ', false, json::error_handler_t::replace);
    return;
  }
  bool object = j.is_object();
  out += object ? "{\n" : "[\n";
  std::size_t k = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++k) {
    out += pad;
    if (object) out += json(it.key()).dump() + ": ";
    pretty_into(out, *it, depth + 1);
    if (k + 1 < j.size()) out += ",";
    out += "\n";
  }
  out += close + (object ? "}" : "]");
}

}  // namespace

std::string pretty(const json& j) {
  std::string out;
  pretty_into(out, j, 0);
  return out + "\n";
}

json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path + ":" + std::to_string(e.byte), e.what());
  }
}

std::string document_type(const json& doc) {
  const json& t = member(doc, "type", "");
  if (!t.is_string()) throw ParseError("/type", "expected a string");
  std::string type = t.get<std::string>();
  if (type != "map" && type != "pair" && type != "economy" && type != "info-economy") {
    throw ParseError("/type", "unknown document type \"" + type + "\"");
  }
  return type;
}

namespace {

void expect_type(const json& doc, const std::string& type) {
  if (document_type(doc) != type) {
    throw ParseError("/type", "expected a \"" + type + "\" document");
  }
}

}  // namespace

MapDocument map_document_from_json(const json& doc) {
  expect_type(doc, "map");
  MapDocument out{map_from_json(member(doc, "map", ""), "/map"), {}, {}, {}, 0};
  if (const json* t = optional_member(doc, "target")) out.target = boxset_from_json(*t, "/target");
  if (const json* r = optional_member(doc, "region")) out.region = boxset_from_json(*r, "/region");
  if (const json* c = optional_member(doc, "candidate")) {
    out.candidate = map_from_json(*c, "/candidate");
  }
  if (const json* s = optional_member(doc, "self_offset")) out.self_offset = count(*s, "/self_offset");
  return out;
}

PairDocument pair_from_json(const json& doc) {
  expect_type(doc, "pair");
  return {map_from_json(member(doc, "t1", ""), "/t1"), map_from_json(member(doc, "t2", ""), "/t2"),
          boxset_from_json(member(doc, "target", ""), "/target")};
}

AbstractEconomy economy_from_json(const json& doc) {
  expect_type(doc, "economy");
  std::vector<Agent> agents;
  std::size_t k = 0;
  for (const auto& a : array_of(member(doc, "agents", ""), "/agents")) {
    const std::string w = at("/agents", k++);
    agents.push_back(Agent{box_from_json(member(a, "X", w), at(w, "X")),
                           boxset_from_json(member(a, "D", w), at(w, "D")),
                           map_from_json(member(a, "A", w), at(w, "A")),
                           map_from_json(member(a, "B", w), at(w, "B")),
                           map_from_json(member(a, "P", w), at(w, "P"))});
  }
  return guarded("/agents", [&] { return AbstractEconomy(std::move(agents)); });
}

namespace {

SignalTable::Labels labels_from_json(const json& j, const std::string& where) {
  SignalTable::Labels out;
  std::size_t k = 0;
  for (const auto& agent : array_of(j, where)) {
    const std::string w = at(where, k++);
    std::vector<std::string> row;
    std::size_t m = 0;
    for (const auto& label : array_of(agent, w)) {
      if (!label.is_string()) throw ParseError(at(w, m), "expected a signal label");
      row.push_back(label.get<std::string>());
      ++m;
    }
    out.push_back(std::move(row));
  }
  return out;
}

json labels_json(const SignalTable::Labels& labels) {
  json out = json::array();
  for (const auto& row : labels) out.push_back(row);
  return out;
}

}  // namespace

InfoEconomyDocument info_economy_from_json(const json& doc) {
  expect_type(doc, "info-economy");
  std::size_t states = count(member(doc, "states", ""), "/states");
  std::size_t goods = count(member(doc, "goods", ""), "/goods");
  std::vector<Point> endowments;
  std::size_t k = 0;
  for (const auto& e : array_of(member(doc, "endowments", ""), "/endowments")) {
    endowments.push_back(point(e, at("/endowments", k++)));
  }
  const json& sig = member(doc, "signals", "");
  SignalTable::Labels defaults = labels_from_json(member(sig, "default", "/signals"),
                                                  "/signals/default");
  std::vector<SignalTable::Entry> entries;
  if (const json* by = optional_member(sig, "by_price")) {
    std::size_t m = 0;
    for (const auto& entry : array_of(*by, "/signals/by_price")) {
      const std::string w = at("/signals/by_price", m++);
      entries.push_back({point(member(entry, "price", w), at(w, "price")),
                         labels_from_json(member(entry, "labels", w), at(w, "labels"))});
    }
  }
  std::vector<PiecewiseMap> preferences;
  if (const json* prefs = optional_member(doc, "preferences")) {
    std::size_t m = 0;
    for (const auto& p : array_of(*prefs, "/preferences")) {
      preferences.push_back(map_from_json(p, at("/preferences", m++)));
    }
  }
  std::optional<double> truncation;
  if (const json* t = optional_member(doc, "truncation")) truncation = number(*t, "/truncation");
  std::optional<double> price_step;
  if (const json* s = optional_member(doc, "price_step")) price_step = number(*s, "/price_step");
  return guarded("", [&] {
    return InfoEconomyDocument{
        InfoEconomy(states, goods, std::move(endowments),
                    SignalTable(std::move(defaults), std::move(entries)), std::move(preferences),
                    truncation),
        price_step};
  });
}

json map_document(const PiecewiseMap& t, const std::optional<BoxSet>& target) {
  json doc{{"type", "map"}, {"map", to_json(t)}};
  if (target) doc["target"] = to_json(*target);
  return doc;
}

json pair_document(const PiecewiseMap& t1, const PiecewiseMap& t2, const BoxSet& target) {
  return json{{"type", "pair"}, {"target", to_json(target)}, {"t1", to_json(t1)}, {"t2", to_json(t2)}};
}

json economy_document(const AbstractEconomy& e) {
  json agents = json::array();
  for (const auto& a : e.agents()) {
    agents.push_back({{"X", to_json(a.choice)},
                      {"D", to_json(a.target)},
                      {"A", to_json(a.a)},
                      {"B", to_json(a.b)},
                      {"P", to_json(a.p)}});
  }
  return json{{"type", "economy"}, {"agents", agents}};
}

json info_economy_document(const InfoEconomy& e, std::optional<double> price_step) {
  json endowments = json::array();
  for (const auto& p : e.endowments()) endowments.push_back(point_json(p));
  json by_price = json::array();
  for (const auto& entry : e.signals().entries()) {
    by_price.push_back({{"price", point_json(entry.price)}, {"labels", labels_json(entry.labels)}});
  }
  json doc{{"type", "info-economy"},
           {"states", e.states()},
           {"goods", e.goods()},
           {"endowments", endowments},
           {"truncation", number_json(e.truncation())}};
  if (price_step) doc["price_step"] = *price_step;
  doc["signals"] = {{"default", labels_json(e.signals().defaults())}, {"by_price", by_price}};
  const json monotone = to_json(monotone_preference(e.bundle_dim(), e.truncation()));
  bool custom = false;
  json prefs = json::array();
  for (const auto& p : e.preferences()) {
    prefs.push_back(to_json(p));
    custom = custom || prefs.back() != monotone;
  }
  if (custom) doc["preferences"] = prefs;
  return doc;
}

json to_json(const CheckReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    json witnesses = json::array();
    for (const auto& w : v.witnesses) {
      witnesses.push_back({{"point", point_json(w.point)},
                           {"neighbor", point_json(w.neighbor)},
                           {"excess", number_json(w.excess)},
                           {"category", w.category}});
    }
    verdicts.push_back({{"name", v.name},
                        {"status", to_string(v.status)},
                        {"informational", v.informational},
                        {"max_excess", number_json(v.max_excess)},
                        {"detail", v.detail},
                        {"witnesses", witnesses}});
  }
  return json{{"record", "report"},   {"property", r.property}, {"status", to_string(r.status)},
              {"parameters", params}, {"notes", r.notes},       {"verdicts", verdicts}};
}

json to_json(const EquilibriumCertificate& c) {
  json agents = json::array();
  for (const auto& a : c.agents) {
    agents.push_back({{"b_adherence", to_json(a.b_adherence)},
                      {"in_b_adherence", a.in_b_adherence},
                      {"b_piece", a.b_piece ? json(*a.b_piece) : json(nullptr)},
                      {"a_cap_p", to_json(a.a_cap_p)},
                      {"valid", a.valid()}});
  }
  return json{{"record", "equilibrium"}, {"x", point_json(c.x)}, {"valid", c.valid}, {"agents", agents}};
}

json to_json(const RadnerCertificate& c) {
  json in_b = json::array(), empty = json::array();
  for (bool b : c.in_b_adherence) in_b.push_back(b);
  for (bool b : c.a_cap_p_empty) empty.push_back(b);
  return json{{"record", "radner-equilibrium"},
              {"x", point_json(c.x)},
              {"p", point_json(c.p)},
              {"in_b_adherence", in_b},
              {"a_cap_p_empty", empty},
              {"valid", c.valid}};
}

json to_json(const MarketClearing& m) {
  json clauses = json::array();
  for (const auto& c : m.clauses) {
    clauses.push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
  }
  return json{{"record", "market-clearing"}, {"clauses", clauses}};
}

json to_json(const ChainResult& r) {
  json sets = json::array();
  for (const auto& q : r.sets) sets.push_back({{"eps", q.eps}, {"count", q.points.size()}});
  json points = json::array();
  for (const auto& p : r.points) points.push_back({{"x", point_json(p.x)}, {"certified", p.certified}});
  return json{{"record", "fixed-points"}, {"sets", sets},       {"nested", r.nested},
              {"points", points},         {"diagnostics", r.diagnostics}};
}

}  // namespace setval::io
