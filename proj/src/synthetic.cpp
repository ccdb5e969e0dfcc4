#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>

#include "expedition/corpus.hpp"
#include "expedition/error.hpp"
#include "expedition/tokenize.hpp"

namespace expedition {

namespace {

constexpr std::array<const char*, 12> kMonthNames = {"January", "February", "March",     "April",
                                                     "May",     "June",     "July",      "August",
                                                     "September", "October", "November", "December"};

constexpr std::array<const char*, 24> kFirstNames = {
    "Alice", "Bruno", "Carla", "Dmitri", "Elena", "Farid", "Greta", "Hiro", "Ines", "Jonas", "Kira", "Luis",
    "Mara",  "Nils",  "Olga",  "Pavel",  "Quinn", "Rosa",  "Sven",  "Tara", "Udo",  "Vera",  "Willa", "Yusuf"};
constexpr std::array<const char*, 20> kLastNames = {
    "Abbott", "Brandt", "Castell", "Dorsey", "Engel",  "Falk",  "Gruber", "Hale",  "Ivers",  "Jansen",
    "Keller", "Lorenz", "Moreau",  "Novak",  "Okafor", "Pryce", "Quint",  "Rhee",  "Sauter", "Thorne"};

constexpr std::array<const char*, 96> kVocabulary = {
    "council",  "budget",   "harbor",   "school",   "election", "senate",   "museum",   "river",
    "highway",  "hospital", "court",    "ruling",   "market",   "stocks",   "bank",     "factory",
    "union",    "strike",   "weather",  "storm",    "festival", "concert",  "theater",  "gallery",
    "season",   "league",   "coach",    "stadium",  "airport",  "airline",  "railway",  "station",
    "mayor",    "governor", "debate",   "policy",   "tax",      "housing",  "rent",     "tenant",
    "library",  "college",  "student",  "teacher",  "science",  "research", "doctor",   "patient",
    "farm",     "harvest",  "drought",  "energy",   "pipeline", "oil",      "garden",   "park",
    "bridge",   "tunnel",   "ferry",    "transit",  "subway",   "bus",      "traffic",  "parking",
    "crime",    "trial",    "jury",     "verdict",  "lawyer",   "judge",    "prison",   "parole",
    "report",   "survey",   "census",   "agency",   "office",   "official", "minister", "embassy",
    "treaty",   "summit",   "border",   "customs",  "export",   "import",   "tariff",   "currency",
    "software", "computer", "network",  "internet", "phone",    "record",   "film",     "novel"};

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    // Plain modulo keeps the stream identical across standard libraries.
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
    bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

private:
    std::mt19937_64 engine_;
};

struct Entity {
    std::string id;
    std::string surface;
};

std::vector<Entity> make_entities(std::size_t n) {
    std::vector<Entity> out;
    const std::size_t combos = kFirstNames.size() * kLastNames.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::string surface = std::string(kFirstNames[i % kFirstNames.size()]) + " " +
                              kLastNames[(i / kFirstNames.size()) % kLastNames.size()];
        if (i >= combos) surface += " " + std::to_string(i / combos + 1);
        std::string id = "E:" + surface;
        std::replace(id.begin(), id.end(), ' ', '_');
        out.push_back({std::move(id), std::move(surface)});
    }
    return out;
}

std::string capitalized(std::string word) {
    if (!word.empty() && word[0] >= 'a' && word[0] <= 'z') word[0] = static_cast<char>(word[0] - 'a' + 'A');
    return word;
}

// Evenly spreads `count` items over `months` slots: item i -> floor(i * months / count).
int even_slot(std::size_t i, std::size_t count, int months) {
    return static_cast<int>((static_cast<unsigned long long>(i) * static_cast<unsigned>(months)) / count);
}

struct Plan {
    Month month;
    int burst = -1;   // index into bursts, -1 for background
    bool in_interval = false;
};

class DocBuilder {
public:
    explicit DocBuilder(Document& doc) : doc_(doc) {}

    void title(const std::string& text) { doc_.title = text; }

    void word(const std::string& w) {
        sep();
        doc_.body += w;
    }

    void mention(const Entity& e) {
        sep();
        const std::size_t start = offset();
        doc_.body += e.surface;
        doc_.entity_mentions.push_back({e.id, e.surface, start, offset(), false});
    }

    void title_mention(const Entity& e, const std::string& rest) {
        doc_.title = e.surface + " " + rest;
        doc_.entity_mentions.push_back({e.id, e.surface, 0, e.surface.size(), true});
    }

    void month_ref(Month m) {
        word("in");
        sep();
        const std::size_t start = offset();
        doc_.body += std::string(kMonthNames[static_cast<std::size_t>(m.month() - 1)]) + " " + std::to_string(m.year());
        doc_.temporal_refs.push_back({m, m, start, offset()});
    }

    void end_sentence() { doc_.body += '.'; }

private:
    std::size_t offset() const { return doc_.title.size() + 1 + doc_.body.size(); }
    void sep() {
        if (!doc_.body.empty()) doc_.body += ' ';
    }
    Document& doc_;
};

}  // namespace

std::vector<Document> generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_docs == 0) throw InvalidArgument("n_docs must be >= 1");
    if (spec.span.last < spec.span.first) throw InvalidArgument("empty span");
    for (const auto& b : spec.bursts) {
        if (b.interval.first < spec.span.first || spec.span.last < b.interval.last || b.interval.last < b.interval.first) {
            throw InvalidArgument("burst interval " + b.interval.to_string() + " outside span " + spec.span.to_string());
        }
        if (b.terms.empty()) throw InvalidArgument("burst entry without topic terms");
        if (b.intensity < 0.0 || b.intensity > 1.0) throw InvalidArgument("burst intensity must be in [0, 1]");
    }

    Rng rng(spec.seed);
    const int months = spec.span.length();
    const auto entities = make_entities(spec.n_entities);

    std::set<std::string> reserved;
    for (const auto& b : spec.bursts) {
        for (const auto& t : b.terms) {
            for (auto& tok : tokenize(t)) reserved.insert(tok);
        }
    }
    std::vector<std::string> vocabulary;
    for (const char* w : kVocabulary) {
        if (!reserved.count(w)) vocabulary.emplace_back(w);
    }

    // Publication plan: topic documents first, the rest is background.
    std::vector<Plan> plan;
    const auto per_topic = static_cast<std::size_t>(std::llround(spec.topic_share * static_cast<double>(spec.n_docs)));
    for (std::size_t j = 0; j < spec.bursts.size(); ++j) {
        const auto& b = spec.bursts[j];
        const std::size_t budget = std::min(per_topic, spec.n_docs - plan.size());
        const auto inside = static_cast<std::size_t>(std::llround(b.intensity * static_cast<double>(budget)));
        for (std::size_t i = 0; i < inside; ++i) {
            plan.push_back({b.interval.first + even_slot(i, inside, b.interval.length()), static_cast<int>(j), true});
        }
        const std::size_t spread = budget - inside;
        for (std::size_t i = 0; i < spread; ++i) {
            plan.push_back({spec.span.first + even_slot(i, spread, months), static_cast<int>(j), false});
        }
    }
    const std::size_t background = spec.n_docs - plan.size();
    for (std::size_t i = 0; i < background; ++i) {
        plan.push_back({spec.span.first + even_slot(i, background, months), -1, false});
    }

    auto pick_word = [&]() -> const std::string& { return vocabulary[rng.below(vocabulary.size())]; };

    std::vector<Document> docs;
    docs.reserve(plan.size());
    for (const auto& p : plan) {
        Document doc;
        doc.published = Date{p.month.year(), p.month.month(), static_cast<int>(1 + rng.below(28))};
        doc.article_type = rng.chance(0.8) ? "news" : "opinion";
        DocBuilder b(doc);

        std::string phrase;
        if (p.burst >= 0) {
            const auto& burst = spec.bursts[static_cast<std::size_t>(p.burst)];
            for (const auto& t : burst.terms) phrase += (phrase.empty() ? "" : " ") + t;
        }

        const Entity* lead = nullptr;
        if (!entities.empty()) {
            lead = p.burst >= 0 ? &entities[static_cast<std::size_t>(p.burst) % entities.size()]
                                : &entities[rng.below(entities.size())];
        }
        std::string headline_rest = (p.burst >= 0 ? phrase : pick_word()) + " " + pick_word() + " " + pick_word();
        if (lead && rng.chance(0.5)) {
            b.title_mention(*lead, headline_rest);
        } else {
            b.title(capitalized(headline_rest));
        }

        const std::size_t sentences = 2 + rng.below(3);
        const std::size_t phrase_repeats = p.burst < 0 ? 0 : (p.in_interval ? 2 + rng.below(2) : 1);
        for (std::size_t s = 0; s < sentences; ++s) {
            const std::size_t words = 6 + rng.below(8);
            for (std::size_t w = 0; w < words; ++w) b.word(pick_word());
            if (s < phrase_repeats) b.word(phrase);
            if (s == 0 && p.burst >= 0) b.month_ref(p.month);
            if (lead && (s == 0 || rng.chance(0.3))) b.mention(s == 0 ? *lead : entities[rng.below(entities.size())]);
            b.end_sentence();
        }
        for (std::size_t s = sentences; s < phrase_repeats; ++s) {
            b.word(phrase);
            b.end_sentence();
        }
        docs.push_back(std::move(doc));
    }

    std::stable_sort(docs.begin(), docs.end(), [](const Document& a, const Document& b) { return a.published < b.published; });
    for (std::size_t i = 0; i < docs.size(); ++i) {
        char id[24];
        std::snprintf(id, sizeof id, "s%06zu", i + 1);
        docs[i].doc_id = id;
    }
    return docs;
}

}  // namespace expedition
