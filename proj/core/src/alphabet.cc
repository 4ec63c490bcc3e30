#include "aia/alphabet.hh"

#include <algorithm>
#include <cctype>

#include "aia/error.hh"

namespace aia {

Alphabet::Alphabet(std::vector<std::string> inputs, std::vector<std::string> outputs)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)) {
    std::sort(inputs_.begin(), inputs_.end());
    std::sort(outputs_.begin(), outputs_.end());
    auto check_unique = [](const std::vector<std::string>& names, const char* what) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i].empty()) {
                throw AlphabetError(std::string("empty ") + what + " name");
            }
            if (i > 0 && names[i] == names[i - 1]) {
                throw AlphabetError(std::string("duplicate ") + what + " '" + names[i] + "'");
            }
        }
    };
    check_unique(inputs_, "input");
    check_unique(outputs_, "output");
    std::vector<std::string> common;
    std::set_intersection(inputs_.begin(), inputs_.end(), outputs_.begin(), outputs_.end(),
                          std::back_inserter(common));
    if (!common.empty()) {
        throw AlphabetError("label '" + common.front() + "' is both an input and an output");
    }
}

const std::string& Alphabet::name(LabelId l) const {
    check(l);
    return is_input(l) ? inputs_[l] : outputs_[l - inputs_.size()];
}

std::string Alphabet::decorated(LabelId l) const {
    return (is_input(l) ? "?" : "!") + name(l);
}

std::optional<LabelId> Alphabet::find(std::string_view name) const {
    auto in = std::lower_bound(inputs_.begin(), inputs_.end(), name);
    if (in != inputs_.end() && *in == name) {
        return static_cast<LabelId>(in - inputs_.begin());
    }
    auto out = std::lower_bound(outputs_.begin(), outputs_.end(), name);
    if (out != outputs_.end() && *out == name) {
        return static_cast<LabelId>(inputs_.size() + (out - outputs_.begin()));
    }
    return std::nullopt;
}

LabelId Alphabet::input(std::string_view name) const {
    auto l = find(name);
    if (!l || !is_input(*l)) {
        throw AlphabetError("unknown input '" + std::string(name) + "'");
    }
    return *l;
}

LabelId Alphabet::output(std::string_view name) const {
    auto l = find(name);
    if (!l || !is_output(*l)) {
        throw AlphabetError("unknown output '" + std::string(name) + "'");
    }
    return *l;
}

void Alphabet::check(LabelId l) const {
    if (!contains(l)) {
        throw AlphabetError("label id " + std::to_string(l) + " outside alphabet of size " +
                            std::to_string(size()));
    }
}

void Alphabet::check(const Word& w) const {
    for (LabelId l : w) {
        check(l);
    }
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b, std::string_view context) {
    if (!(a == b)) {
        throw AlphabetError(std::string(context) + ": alphabets differ");
    }
}

void check_ftrace(const Alphabet& alphabet, const FTrace& trace) {
    alphabet.check(trace.body);
    if (trace.failure && !alphabet.is_input(*trace.failure)) {
        throw AlphabetError("refusal of a non-input label");
    }
}

std::string format_word(const Alphabet& alphabet, const Word& word) {
    std::string out;
    for (LabelId l : word) {
        if (!out.empty()) {
            out += ' ';
        }
        out += alphabet.decorated(l);
    }
    return out;
}

std::string format_observation(const Alphabet& alphabet, const Observation& obs) {
    return obs.refused ? "~" + alphabet.name(obs.label) : alphabet.decorated(obs.label);
}

std::string format_observations(const Alphabet& alphabet, const std::vector<Observation>& obs) {
    std::string out;
    for (const Observation& o : obs) {
        if (!out.empty()) {
            out += ' ';
        }
        out += format_observation(alphabet, o);
    }
    return out;
}

std::string format_trace(const Alphabet& alphabet, const FTrace& trace) {
    return format_observations(alphabet, to_observations(trace));
}

bool is_plain_name(std::string_view name) {
    if (name.empty() || name == "T" || name == "F") {
        return false;
    }
    return std::all_of(name.begin(), name.end(), [](char c) {
        const auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || c == '_' || c == '.' || c == '+' || c == '\'' || c == '~' ||
               c == '$' || c == '@' || u >= 0x80;
    });
}

std::string format_name(std::string_view name) {
    if (is_plain_name(name)) {
        return std::string(name);
    }
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + '"';
}

std::optional<FTrace> to_ftrace(const std::vector<Observation>& obs) {
    FTrace trace;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        if (obs[i].refused) {
            if (i + 1 != obs.size()) {
                return std::nullopt;
            }
            trace.failure = obs[i].label;
        } else {
            trace.body.push_back(obs[i].label);
        }
    }
    return trace;
}

std::vector<Observation> to_observations(const FTrace& trace) {
    std::vector<Observation> obs;
    obs.reserve(trace.length());
    for (LabelId l : trace.body) {
        obs.push_back({l, false});
    }
    if (trace.failure) {
        obs.push_back({*trace.failure, true});
    }
    return obs;
}

} // namespace aia
