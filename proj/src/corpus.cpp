#include "newsbias/corpus.hpp"

#include "newsbias/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace newsbias {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

bool all_digits(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::chrono::sys_days to_days(Date d) { return std::chrono::sys_days{d}; }

std::string require_string(const json& obj, const char* field, const std::string& where) {
    const auto it = obj.find(field);
    if (it == obj.end()) throw DataError(std::string("missing field ") + field + " at " + where);
    if (!it->is_string()) throw DataError(std::string("field ") + field + " is not a string at " + where);
    return it->get<std::string>();
}

int form_rank(NameForm f) {
    switch (f) {
    case NameForm::full: return 0;
    case NameForm::surname: return 1;
    case NameForm::given: return 2;
    }
    return 3;
}

std::vector<std::string> name_tokens(std::string_view name) {
    std::vector<std::string> out;
    for (auto& t : tokenize(name).tokens) out.push_back(std::move(t.surface));
    return out;
}

std::optional<std::string> strip_possessive(const std::string& s) {
    if (s.size() > 2 && s.ends_with("'s")) return s.substr(0, s.size() - 2);
    if (s.size() > 1 && s.ends_with("'")) return s.substr(0, s.size() - 1);
    return std::nullopt;
}

bool token_matches(const Token& t, const std::string& name, bool last) {
    if (t.kind == TokenKind::marker) return false;
    if (t.surface == name) return true;
    if (!last) return false;
    const auto base = strip_possessive(t.surface);
    return base && *base == name;
}

} // namespace

Date parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !all_digits(text.substr(0, 4)) ||
        !all_digits(text.substr(5, 2)) || !all_digits(text.substr(8, 2)))
        throw DataError("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
    const int y = std::stoi(std::string(text.substr(0, 4)));
    const unsigned m = static_cast<unsigned>(std::stoi(std::string(text.substr(5, 2))));
    const unsigned d = static_cast<unsigned>(std::stoi(std::string(text.substr(8, 2))));
    const Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) throw DataError("invalid date '" + std::string(text) + "'");
    return date;
}

std::string format_date(Date date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

std::string_view to_string(Gender g) noexcept { return g == Gender::female ? "female" : "male"; }

Gender parse_gender(std::string_view text) {
    if (text == "female") return Gender::female;
    if (text == "male") return Gender::male;
    throw DataError("unknown gender '" + std::string(text) + "', expected female or male");
}

// ---------------------------------------------------------------------------
// Registry

Registry::Registry(std::vector<PoliticianRecord> records) : records_(std::move(records)) {
    std::unordered_set<std::string> seen;
    for (const auto& r : records_) {
        if (r.id.empty()) throw DataError("politician with empty id");
        if (!seen.insert(r.id).second) throw DataError("duplicate politician id '" + r.id + "'");
        if (r.given_name.empty() || r.surname.empty())
            throw DataError("politician '" + r.id + "' needs both given_name and surname");
        for (const auto& t : r.terms)
            if (!(t.start < t.end))
                throw DataError("politician '" + r.id + "': term " + format_date(t.start) + ".." +
                                format_date(t.end) + " does not start before it ends");
        for (std::size_t a = 0; a < r.terms.size(); ++a)
            for (std::size_t b = a + 1; b < r.terms.size(); ++b) {
                const auto& x = r.terms[a];
                const auto& y = r.terms[b];
                if (x.start < y.end && y.start < x.end)
                    throw DataError("politician '" + r.id + "': overlapping terms " + format_date(x.start) +
                                    ".." + format_date(x.end) + " and " + format_date(y.start) + ".." +
                                    format_date(y.end));
            }
    }

    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        std::vector<std::pair<std::vector<std::string>, NameForm>> forms = {
            {name_tokens(r.given_name + " " + r.surname), NameForm::full},
            {name_tokens(r.surname), NameForm::surname},
            {name_tokens(r.given_name), NameForm::given},
        };
        for (const auto& extra : r.extra_variants) {
            auto toks = name_tokens(extra);
            const auto form = toks.size() > 1 ? NameForm::full : NameForm::surname;
            forms.emplace_back(std::move(toks), form);
        }
        std::set<std::vector<std::string>> added;
        for (auto& [toks, form] : forms) {
            if (toks.empty() || !added.insert(toks).second) continue;
            auto key = toks.front();
            variants_.emplace(std::move(key), Variant{std::move(toks), form, i});
        }
    }
}

const PoliticianRecord* Registry::find(std::string_view id) const {
    for (const auto& r : records_)
        if (r.id == id) return &r;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Serialization

std::vector<Article> parse_articles(std::istream& in) {
    std::vector<Article> out;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t record = 0;
    while (std::getline(in, line)) {
        ++record;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = "record " + std::to_string(record);
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw DataError("malformed JSON at " + where + ": " + e.what());
        }
        if (!obj.is_object()) throw DataError("expected a JSON object at " + where);
        Article a;
        a.id = require_string(obj, "id", where);
        a.source = require_string(obj, "source", where);
        const auto date = require_string(obj, "date", where);
        a.section = require_string(obj, "section", where);
        a.headline = require_string(obj, "headline", where);
        a.body = require_string(obj, "body", where);
        try {
            a.date = parse_date(date);
        } catch (const DataError& e) {
            throw DataError(std::string(e.what()) + " at " + where);
        }
        if (a.id.empty()) throw DataError("empty id at " + where);
        if (a.body.empty()) throw DataError("empty body at " + where);
        if (!ids.insert(a.id).second) throw DataError("duplicate article id '" + a.id + "' at " + where);
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<Article> load_articles(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open articles file " + path.string());
    return parse_articles(in);
}

void write_articles(std::ostream& out, std::span<const Article> articles) {
    for (const auto& a : articles) {
        ordered_json obj;
        obj["id"] = a.id;
        obj["source"] = a.source;
        obj["date"] = format_date(a.date);
        obj["section"] = a.section;
        obj["headline"] = a.headline;
        obj["body"] = a.body;
        out << obj.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
    }
}

Registry parse_registry(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("malformed registry JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("politicians") || !doc["politicians"].is_array())
        throw DataError("registry must be an object with a 'politicians' array");

    std::vector<PoliticianRecord> records;
    std::size_t n = 0;
    for (const auto& p : doc["politicians"]) {
        ++n;
        const std::string where = "politician " + std::to_string(n);
        if (!p.is_object()) throw DataError("expected an object at " + where);
        PoliticianRecord r;
        r.id = require_string(p, "id", where);
        r.gender = parse_gender(require_string(p, "gender", where));
        r.given_name = require_string(p, "given_name", where);
        r.surname = require_string(p, "surname", where);
        if (const auto it = p.find("extra_variants"); it != p.end()) {
            if (!it->is_array()) throw DataError("extra_variants must be an array at " + where);
            for (const auto& v : *it) {
                if (!v.is_string()) throw DataError("extra_variants entries must be strings at " + where);
                r.extra_variants.push_back(v.get<std::string>());
            }
        }
        const auto terms = p.find("terms");
        if (terms == p.end() || !terms->is_array()) throw DataError("missing field terms at " + where);
        for (const auto& t : *terms) {
            OfficeTerm term;
            term.portfolio = require_string(t, "portfolio", where);
            term.start = parse_date(require_string(t, "start", where));
            term.end = parse_date(require_string(t, "end", where));
            r.terms.push_back(std::move(term));
        }
        records.push_back(std::move(r));
    }
    return Registry(std::move(records));
}

Registry load_registry(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open registry " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_registry(buf.str());
}

std::string registry_to_json(const Registry& registry) {
    ordered_json politicians = ordered_json::array();
    for (const auto& r : registry.records()) {
        ordered_json p;
        p["id"] = r.id;
        p["gender"] = std::string(to_string(r.gender));
        p["given_name"] = r.given_name;
        p["surname"] = r.surname;
        p["extra_variants"] = r.extra_variants;
        ordered_json terms = ordered_json::array();
        for (const auto& t : r.terms)
            terms.push_back({{"portfolio", t.portfolio}, {"start", format_date(t.start)}, {"end", format_date(t.end)}});
        p["terms"] = std::move(terms);
        politicians.push_back(std::move(p));
    }
    ordered_json doc;
    doc["politicians"] = std::move(politicians);
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Matching and labeling

ArticleText analyze_text(const Article& article, const WordSet& abbreviations) {
    return {split_sentences(tokenize(article.headline), abbreviations),
            split_sentences(tokenize(article.body), abbreviations)};
}

std::vector<Mention> find_mentions(const TokenStream& stream, TextField field, const Registry& registry) {
    std::vector<Mention> out;
    const auto& toks = stream.tokens;
    const auto& variants = registry.variants();

    std::size_t i = 0;
    while (i < toks.size()) {
        std::size_t best_len = 0;
        std::vector<const Registry::Variant*> best;

        auto consider = [&](const std::string& key) {
            const auto [lo, hi] = variants.equal_range(key);
            for (auto it = lo; it != hi; ++it) {
                const auto& v = it->second;
                const std::size_t len = v.tokens.size();
                if (i + len > toks.size() || len < best_len) continue;
                bool ok = true;
                for (std::size_t k = 0; k < len && ok; ++k) ok = token_matches(toks[i + k], v.tokens[k], k + 1 == len);
                if (!ok) continue;
                if (len > best_len) {
                    best_len = len;
                    best.clear();
                }
                best.push_back(&v);
            }
        };
        if (toks[i].kind != TokenKind::marker) {
            consider(toks[i].surface);
            if (const auto base = strip_possessive(toks[i].surface)) consider(*base);
        }

        if (best_len == 0) {
            ++i;
            continue;
        }
        Mention m;
        m.field = field;
        m.span = {i, i + best_len};
        m.form = best.front()->form;
        std::set<std::string> ids;
        for (const auto* v : best) {
            if (form_rank(v->form) < form_rank(m.form)) m.form = v->form;
            ids.insert(registry.records()[v->record].id);
        }
        m.politician_ids.assign(ids.begin(), ids.end());
        out.push_back(std::move(m));
        i += best_len;
    }
    return out;
}

std::vector<PoliticianMatch> match_politicians(const ArticleText& text, const Registry& registry) {
    std::map<std::string, PoliticianMatch> by_id;
    for (const auto field : {TextField::headline, TextField::body}) {
        const auto& stream = field == TextField::headline ? text.headline : text.body;
        for (const auto& m : find_mentions(stream, field, registry)) {
            for (const auto& id : m.politician_ids) {
                auto& match = by_id[id];
                if (match.politician_id.empty()) {
                    match.politician_id = id;
                    match.gender = registry.find(id)->gender;
                }
                match.mentions.push_back(m);
                if (field == TextField::headline) match.headline_mention = true;
            }
        }
    }
    std::vector<PoliticianMatch> out;
    out.reserve(by_id.size());
    for (auto& [id, match] : by_id) out.push_back(std::move(match));
    return out;
}

std::vector<PoliticianMatch> match_politicians(const Article& article, const Registry& registry) {
    return match_politicians(analyze_text(article), registry);
}

TokenStream masked_document(const ArticleText& text, std::span<const PoliticianMatch> matches,
                            const WordSet& gendered) {
    TokenStream doc = text.headline;
    const std::size_t offset = doc.tokens.size();
    doc.tokens.insert(doc.tokens.end(), text.body.tokens.begin(), text.body.tokens.end());
    for (const auto& s : text.body.sentences) doc.sentences.push_back({s.begin + offset, s.end + offset});

    std::map<std::size_t, NameMention> spans;
    for (const auto& match : matches)
        for (const auto& m : match.mentions) {
            const std::size_t shift = m.field == TextField::body ? offset : 0;
            spans.emplace(m.span.begin + shift, NameMention{{m.span.begin + shift, m.span.end + shift}, m.form});
        }
    std::vector<NameMention> mentions;
    mentions.reserve(spans.size());
    for (const auto& [begin, nm] : spans) mentions.push_back(nm);
    return mask_gender_signals(doc, mentions, gendered);
}

std::vector<LabeledInstance> label_instances(std::span<const Article> articles, const Registry& registry,
                                             const LabelOptions& options) {
    std::vector<LabeledInstance> out;
    for (const auto& article : articles) {
        const auto text = analyze_text(article, options.abbreviations);
        const auto matches = match_politicians(text, registry);
        if (matches.empty()) continue;
        const auto masked = masked_document(text, matches, options.gendered);
        for (const Gender g : kGenders) {
            LabeledInstance inst;
            for (const auto& m : matches) {
                if (m.gender != g) continue;
                inst.politician_ids.push_back(m.politician_id);
                inst.headline_mention = inst.headline_mention || m.headline_mention;
            }
            if (inst.politician_ids.empty()) continue;
            inst.article_id = article.id;
            inst.label = g;
            inst.section = article.section;
            inst.masked_tokens = masked.tokens;
            inst.masked_sentences = masked.sentences;
            out.push_back(std::move(inst));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Time in office

namespace {

long overlap_days(const PoliticianRecord& record, const DateRange& window, std::optional<std::string_view> portfolio) {
    long days = 0;
    for (const auto& t : record.terms) {
        if (portfolio && t.portfolio != *portfolio) continue;
        const auto start = std::max(to_days(t.start), to_days(window.start));
        const auto end = std::min(to_days(t.end), to_days(window.end));
        if (start < end) days += (end - start).count();
    }
    return days;
}

} // namespace

double years_in_office(const PoliticianRecord& record, const DateRange& window,
                       std::optional<std::string_view> portfolio) {
    return static_cast<double>(overlap_days(record, window, portfolio)) / kDaysPerYear;
}

double group_years(const Registry& registry, Gender gender, const DateRange& window,
                   std::optional<std::string_view> portfolio) {
    long days = 0;
    for (const auto& r : registry.records())
        if (r.gender == gender) days += overlap_days(r, window, portfolio);
    return static_cast<double>(days) / kDaysPerYear;
}

} // namespace newsbias
