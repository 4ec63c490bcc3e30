#include "aia/io.hh"

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace aia {

namespace {

enum class Tok { Name, Quoted, Arrow, And, Or, LParen, RParen, Query, Bang };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;

    bool is_name() const { return kind == Tok::Name || kind == Tok::Quoted; }
    bool is_keyword(std::string_view word) const { return kind == Tok::Name && text == word; }
};

struct Line {
    std::vector<Token> tokens;
    std::size_t number;
};

bool is_name_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '.' || c == '+' || c == '\'' || c == '~' ||
           c == '$' || c == '@' || u >= 0x80;
}

[[noreturn]] void fail_at(const Token& t, const std::string& message) {
    throw ParseError(message, t.line, t.column);
}

std::vector<Token> lex_line(std::string_view text, std::size_t line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        const std::size_t col = i + 1;
        if (c == '#') {
            break;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        auto single = [&](Tok kind) {
            out.push_back({kind, std::string(1, c), line, col});
            ++i;
        };
        switch (c) {
        case '&': single(Tok::And); continue;
        case '|': single(Tok::Or); continue;
        case '(': single(Tok::LParen); continue;
        case ')': single(Tok::RParen); continue;
        case '?': single(Tok::Query); continue;
        case '!': single(Tok::Bang); continue;
        default: break;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", line, col});
            i += 2;
            continue;
        }
        if (c == '"') {
            std::string value;
            ++i;
            bool closed = false;
            while (i < text.size()) {
                if (text[i] == '\\' && i + 1 < text.size()) {
                    value += text[i + 1];
                    i += 2;
                } else if (text[i] == '"') {
                    ++i;
                    closed = true;
                    break;
                } else {
                    value += text[i++];
                }
            }
            if (!closed) {
                throw ParseError("unterminated quoted name", line, col);
            }
            if (value.empty()) {
                throw ParseError("empty quoted name", line, col);
            }
            out.push_back({Tok::Quoted, std::move(value), line, col});
            continue;
        }
        if (is_name_char(c)) {
            std::size_t j = i;
            while (j < text.size() && is_name_char(text[j])) {
                ++j;
            }
            out.push_back({Tok::Name, std::string(text.substr(i, j - i)), line, col});
            i = j;
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    return out;
}

std::vector<Line> lex(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++number;
        std::string_view raw = text.substr(start, end - start);
        if (!raw.empty() && raw.back() == '\r') {
            raw.remove_suffix(1);
        }
        auto tokens = lex_line(raw, number);
        if (!tokens.empty()) {
            lines.push_back({std::move(tokens), number});
        }
        start = end + 1;
    }
    return lines;
}

// Recursive descent over `|` (lowest), `&`, atoms.
class ExprParser {
public:
    using Resolve = std::function<StateId(const Token&)>;

    ExprParser(const std::vector<Token>& tokens, std::size_t pos, Resolve resolve)
        : tokens_(tokens), pos_(pos), resolve_(std::move(resolve)) {}

    Config parse_all(const Token& anchor) {
        if (pos_ == tokens_.size()) {
            fail_at(anchor, "expected a configuration expression");
        }
        Config e = parse_or();
        if (pos_ != tokens_.size()) {
            fail_at(tokens_[pos_], "unexpected '" + tokens_[pos_].text + "'");
        }
        return e;
    }

private:
    const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }

    Config parse_or() {
        Config e = parse_and();
        while (peek() && peek()->kind == Tok::Or) {
            ++pos_;
            e = join(e, parse_and());
        }
        return e;
    }

    Config parse_and() {
        Config e = parse_atom();
        while (peek() && peek()->kind == Tok::And) {
            ++pos_;
            e = meet(e, parse_atom());
        }
        return e;
    }

    Config parse_atom() {
        const Token* t = peek();
        if (!t) {
            const Token& last = tokens_.back();
            throw ParseError("unexpected end of expression", last.line,
                             last.column + last.text.size());
        }
        ++pos_;
        if (t->kind == Tok::LParen) {
            Config e = parse_or();
            if (!peek() || peek()->kind != Tok::RParen) {
                fail_at(*t, "unbalanced '('");
            }
            ++pos_;
            return e;
        }
        if (t->is_keyword("T")) {
            return Config::top();
        }
        if (t->is_keyword("F")) {
            return Config::bot();
        }
        if (t->is_name()) {
            return Config::embed(resolve_(*t));
        }
        fail_at(*t, "unexpected '" + t->text + "'");
    }

    const std::vector<Token>& tokens_;
    std::size_t pos_;
    Resolve resolve_;
};

struct Transition {
    const Line* line;
    const Token* source;
    const Token* label;
    bool input;
    std::size_t target_pos;
};

struct Parsed {
    bool alternating = false;
    std::string name;
    const Line* inputs = nullptr;
    const Line* outputs = nullptr;
    const Line* states = nullptr;
    const Line* init = nullptr;
    std::vector<Transition> transitions;
};

Parsed split_statements(const std::vector<Line>& lines) {
    if (lines.empty()) {
        throw ParseError("empty model file: expected 'ia' or 'aia' header", 1, 1);
    }
    Parsed p;
    const Line& header = lines.front();
    const Token& kind = header.tokens.front();
    if (!kind.is_keyword("ia") && !kind.is_keyword("aia")) {
        fail_at(kind, "expected 'ia' or 'aia' header");
    }
    p.alternating = kind.text == "aia";
    if (header.tokens.size() > 2) {
        fail_at(header.tokens[2], "unexpected token after model name");
    }
    if (header.tokens.size() == 2) {
        if (!header.tokens[1].is_name()) {
            fail_at(header.tokens[1], "expected a model name");
        }
        p.name = header.tokens[1].text;
    }

    for (std::size_t k = 1; k < lines.size(); ++k) {
        const Line& line = lines[k];
        const Token& first = line.tokens.front();
        const bool transition_like = line.tokens.size() > 1 &&
                                     (line.tokens[1].kind == Tok::Query ||
                                      line.tokens[1].kind == Tok::Bang);
        if (!transition_like && first.kind == Tok::Name) {
            const Line** slot = nullptr;
            if (first.text == "inputs") {
                slot = &p.inputs;
            } else if (first.text == "outputs") {
                slot = &p.outputs;
            } else if (first.text == "states") {
                slot = &p.states;
            } else if (first.text == "init") {
                slot = &p.init;
            } else if (first.text == "ia" || first.text == "aia") {
                fail_at(first, "only one model per file");
            }
            if (slot) {
                if (*slot) {
                    fail_at(first, "duplicate '" + first.text + "' line");
                }
                *slot = &line;
                continue;
            }
        }
        if (!transition_like) {
            fail_at(line.tokens.size() > 1 ? line.tokens[1] : first,
                    "expected a transition 'state ?label -> target'");
        }
        if (!first.is_name()) {
            fail_at(first, "expected a state name");
        }
        if (line.tokens.size() < 3 || !line.tokens[2].is_name()) {
            fail_at(line.tokens[1], "expected a label name after '" + line.tokens[1].text + "'");
        }
        if (line.tokens.size() < 4 || line.tokens[3].kind != Tok::Arrow) {
            fail_at(line.tokens.size() < 4 ? line.tokens[2] : line.tokens[3], "expected '->'");
        }
        p.transitions.push_back(
            {&line, &first, &line.tokens[2], line.tokens[1].kind == Tok::Query, 4});
    }
    return p;
}

std::vector<std::string> name_list(const Line* line) {
    std::vector<std::string> names;
    if (!line) {
        return names;
    }
    std::set<std::string> seen;
    for (std::size_t k = 1; k < line->tokens.size(); ++k) {
        const Token& t = line->tokens[k];
        if (!t.is_name()) {
            fail_at(t, "expected a name");
        }
        if (!seen.insert(t.text).second) {
            fail_at(t, "duplicate name '" + t.text + "'");
        }
        names.push_back(t.text);
    }
    return names;
}

Alphabet build_alphabet(const Parsed& p) {
    try {
        return Alphabet(name_list(p.inputs), name_list(p.outputs));
    } catch (const AlphabetError& e) {
        const Line* where = p.outputs ? p.outputs : p.inputs;
        throw ParseError(e.what(), where ? where->number : 1, 1);
    }
}

// Looks up states, declaring them on first use when the file has no `states` line.
template <typename Automaton>
class StateResolver {
public:
    StateResolver(Automaton& a, bool implicit) : a_(a), implicit_(implicit) {}

    StateId operator()(const Token& t) const {
        if (!t.is_name() || t.is_keyword("T") || t.is_keyword("F")) {
            fail_at(t, "expected a state name");
        }
        if (auto q = a_.find_state(t.text)) {
            return *q;
        }
        if (!implicit_) {
            fail_at(t, "undeclared state '" + t.text + "'");
        }
        return a_.add_state(t.text);
    }

private:
    Automaton& a_;
    bool implicit_;
};

LabelId resolve_label(const Alphabet& alphabet, const Transition& tr) {
    auto l = alphabet.find(tr.label->text);
    if (!l) {
        fail_at(*tr.label, "undeclared label '" + tr.label->text + "'");
    }
    if (alphabet.is_input(*l) != tr.input) {
        fail_at(*tr.label, "'" + tr.label->text + "' is " +
                               (tr.input ? "an output, write !" : "an input, write ?") +
                               tr.label->text);
    }
    return *l;
}

void check_duplicate(std::set<std::pair<StateId, LabelId>>& seen, StateId q, LabelId l,
                     const Transition& tr) {
    if (!seen.insert({q, l}).second) {
        fail_at(*tr.source, "duplicate transition for '" + tr.source->text + "' on '" +
                                tr.label->text + "'");
    }
}

AlternatingIA build_aia(const Parsed& p) {
    const bool implicit = p.states == nullptr;
    AlternatingIA s(build_alphabet(p), name_list(p.states), p.name);
    StateResolver<AlternatingIA> resolve(s, implicit);
    if (p.init) {
        s.set_initial(ExprParser(p.init->tokens, 1, resolve).parse_all(p.init->tokens.front()));
    }
    std::set<std::pair<StateId, LabelId>> seen;
    for (const Transition& tr : p.transitions) {
        const StateId q = resolve(*tr.source);
        const LabelId l = resolve_label(s.alphabet(), tr);
        check_duplicate(seen, q, l, tr);
        const auto& tokens = tr.line->tokens;
        Config target = ExprParser(tokens, tr.target_pos, resolve).parse_all(tokens[3]);
        if (tr.input && target.is_bot()) {
            fail_at(tokens[tr.target_pos], "input '" + tr.label->text + "' may not map to F");
        }
        s.set_transition(q, l, std::move(target));
    }
    return s;
}

StateSet parse_state_set(const std::vector<Token>& tokens, std::size_t pos,
                         const StateResolver<InterfaceAutomaton>& resolve, bool allow_space) {
    StateSet out;
    if (pos < tokens.size() && tokens[pos].is_keyword("F")) {
        if (pos + 1 != tokens.size()) {
            fail_at(tokens[pos + 1], "unexpected token after F");
        }
        return out;
    }
    bool expect_name = true;
    for (std::size_t k = pos; k < tokens.size(); ++k) {
        const Token& t = tokens[k];
        if (t.kind == Tok::Or && !expect_name) {
            expect_name = true;
            continue;
        }
        if (t.is_name() && (expect_name || allow_space)) {
            out.push_back(resolve(t));
            expect_name = false;
            continue;
        }
        fail_at(t, "unexpected '" + t.text + "' in state set");
    }
    if (expect_name && !out.empty()) {
        fail_at(tokens.back(), "dangling '|'");
    }
    return out;
}

InterfaceAutomaton build_ia(const Parsed& p) {
    const bool implicit = p.states == nullptr;
    InterfaceAutomaton i(build_alphabet(p), name_list(p.states), p.name);
    StateResolver<InterfaceAutomaton> resolve(i, implicit);
    if (p.init) {
        i.set_initial(parse_state_set(p.init->tokens, 1, resolve, true));
    }
    std::set<std::pair<StateId, LabelId>> seen;
    for (const Transition& tr : p.transitions) {
        const StateId q = resolve(*tr.source);
        const LabelId l = resolve_label(i.alphabet(), tr);
        check_duplicate(seen, q, l, tr);
        const auto& tokens = tr.line->tokens;
        if (tr.target_pos == tokens.size()) {
            fail_at(tokens[3], "expected target states or F");
        }
        i.set_successors(q, l, parse_state_set(tokens, tr.target_pos, resolve, false));
    }
    return i;
}

std::string header(const char* kind, const std::string& name) {
    std::string out = kind;
    if (!name.empty()) {
        out += ' ' + format_name(name);
    }
    return out + '\n';
}

std::string name_line(const char* keyword, const std::vector<std::string>& names) {
    std::string out = keyword;
    for (const std::string& n : names) {
        out += ' ' + format_name(n);
    }
    return out + '\n';
}

std::string format_config(const AlternatingIA& s, const Config& e) {
    return to_string(e, [&](StateId q) { return format_name(s.state_name(q)); });
}

std::string format_set(const InterfaceAutomaton& i, const StateSet& set) {
    if (set.empty()) {
        return "F";
    }
    std::string out;
    for (StateId q : set) {
        if (!out.empty()) {
            out += " | ";
        }
        out += format_name(i.state_name(q));
    }
    return out;
}

std::string dot_string(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + '"';
}

std::string dot_header(const std::string& name) {
    return "digraph " + dot_string(name.empty() ? "automaton" : name) +
           " {\n  rankdir=LR;\n  node [shape=circle];\n  init [shape=point];\n";
}

} // namespace

Model parse_model(std::string_view text) {
    const std::vector<Line> lines = lex(text);
    const Parsed p = split_statements(lines);
    if (p.alternating) {
        return build_aia(p);
    }
    return build_ia(p);
}

InterfaceAutomaton parse_ia(std::string_view text) {
    Model m = parse_model(text);
    if (auto* i = std::get_if<InterfaceAutomaton>(&m)) {
        return std::move(*i);
    }
    throw ParseError("expected an 'ia' model", 1, 1);
}

AlternatingIA parse_aia(std::string_view text) {
    Model m = parse_model(text);
    if (auto* s = std::get_if<AlternatingIA>(&m)) {
        return std::move(*s);
    }
    throw ParseError("expected an 'aia' model", 1, 1);
}

Config parse_config(std::string_view text, const AlternatingIA& s) {
    std::vector<Token> tokens = lex_line(text, 1);
    auto resolve = [&](const Token& t) -> StateId {
        if (auto q = s.find_state(t.text)) {
            return *q;
        }
        fail_at(t, "undeclared state '" + t.text + "'");
    };
    if (tokens.empty()) {
        throw ParseError("expected a configuration expression", 1, 1);
    }
    return ExprParser(tokens, 0, resolve).parse_all(tokens.front());
}

FTrace parse_trace(std::string_view text, const Alphabet& alphabet) {
    FTrace trace;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
            ++j;
        }
        const std::size_t col = i + 1;
        const char mark = text[i];
        const std::string name(text.substr(i + 1, j - i - 1));
        if (trace.failure) {
            throw ParseError("a refusal '~' may only end a trace", 1, col);
        }
        if (mark != '?' && mark != '!' && mark != '~') {
            throw ParseError("expected '?', '!' or '~' before a label", 1, col);
        }
        if (name.empty()) {
            throw ParseError("missing label name", 1, col);
        }
        auto l = alphabet.find(name);
        if (!l) {
            throw ParseError("unknown label '" + name + "'", 1, col + 1);
        }
        if (mark == '!') {
            if (!alphabet.is_output(*l)) {
                throw ParseError("'" + name + "' is not an output", 1, col);
            }
            trace.body.push_back(*l);
        } else {
            if (!alphabet.is_input(*l)) {
                throw ParseError("'" + name + "' is not an input", 1, col);
            }
            if (mark == '?') {
                trace.body.push_back(*l);
            } else {
                trace.failure = *l;
            }
        }
        i = j;
    }
    return trace;
}

std::string print_model(const InterfaceAutomaton& i) {
    const Alphabet& a = i.alphabet();
    std::string out = header("ia", i.name());
    out += name_line("inputs", a.inputs());
    out += name_line("outputs", a.outputs());
    out += name_line("states", i.state_names());
    out += "init " + format_set(i, i.initial()) + '\n';
    for (StateId q = 0; q < i.num_states(); ++q) {
        for (LabelId l = 0; l < a.size(); ++l) {
            const StateSet& succ = i.successors(q, l);
            if (!succ.empty()) {
                out += format_name(i.state_name(q)) + ' ' + (a.is_input(l) ? '?' : '!') +
                       format_name(a.name(l)) + " -> " + format_set(i, succ) + '\n';
            }
        }
    }
    return out;
}

std::string print_model(const AlternatingIA& s) {
    const Alphabet& a = s.alphabet();
    std::string out = header("aia", s.name());
    out += name_line("inputs", a.inputs());
    out += name_line("outputs", a.outputs());
    out += name_line("states", s.state_names());
    out += "init " + format_config(s, s.initial()) + '\n';
    for (StateId q = 0; q < s.num_states(); ++q) {
        for (LabelId l = 0; l < a.size(); ++l) {
            const Config& e = s.transition(q, l);
            if (a.is_input(l) ? e.is_top() : e.is_bot()) {
                continue;
            }
            out += format_name(s.state_name(q)) + ' ' + (a.is_input(l) ? '?' : '!') +
                   format_name(a.name(l)) + " -> " + format_config(s, e) + '\n';
        }
    }
    return out;
}

std::string print_model(const Model& m) {
    return std::visit([](const auto& x) { return print_model(x); }, m);
}

std::string to_dot(const AlternatingIA& s) {
    const Alphabet& a = s.alphabet();
    std::ostringstream out;
    out << dot_header(s.name());
    for (StateId q = 0; q < s.num_states(); ++q) {
        out << "  s" << q << " [label=" << dot_string(s.state_name(q)) << "];\n";
    }
    std::size_t extra = 0;
    auto edge = [&](const std::string& from, const Config& e, const std::string& label) {
        const std::string attr = label.empty() ? "" : " [label=" + dot_string(label) + "]";
        if (e.is_top() || e.is_bot()) {
            const std::string node = (e.is_top() ? "top" : "bot") + std::to_string(extra++);
            out << "  " << node << " [label=\"" << (e.is_top() ? "⊤" : "⊥")
                << "\", shape=plaintext];\n";
            out << "  " << from << " -> " << node << attr << ";\n";
            return;
        }
        for (const Clause& clause : e.clauses()) {
            if (clause.size() == 1) {
                out << "  " << from << " -> s" << clause.front() << attr << ";\n";
                continue;
            }
            const std::string junction = "j" + std::to_string(extra++);
            out << "  " << junction << " [shape=point];\n";
            out << "  " << from << " -> " << junction
                << (label.empty() ? " [arrowhead=none]" : " [arrowhead=none, label=" +
                                                              dot_string(label) + "]")
                << ";\n";
            for (StateId q : clause) {
                out << "  " << junction << " -> s" << q << ";\n";
            }
        }
    };
    edge("init", s.initial(), "");
    for (StateId q = 0; q < s.num_states(); ++q) {
        for (LabelId l = 0; l < a.size(); ++l) {
            const Config& e = s.transition(q, l);
            if (a.is_input(l) ? e.is_top() : e.is_bot()) {
                continue;
            }
            edge("s" + std::to_string(q), e, a.decorated(l));
        }
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const InterfaceAutomaton& i, bool verdicts) {
    const Alphabet& a = i.alphabet();
    std::ostringstream out;
    out << dot_header(i.name());
    for (StateId q = 0; q < i.num_states(); ++q) {
        const std::string& name = i.state_name(q);
        out << "  s" << q << " [label=" << dot_string(name);
        if (verdicts && (name == "pass" || name == "fail")) {
            out << ", shape=doublecircle";
        }
        out << "];\n";
    }
    for (StateId q : i.initial()) {
        out << "  init -> s" << q << ";\n";
    }
    for (StateId q = 0; q < i.num_states(); ++q) {
        std::map<StateId, std::string> labels;
        for (LabelId l = 0; l < a.size(); ++l) {
            for (StateId r : i.successors(q, l)) {
                std::string& text = labels[r];
                text += (text.empty() ? "" : ", ") + a.decorated(l);
            }
        }
        for (const auto& [r, text] : labels) {
            out << "  s" << q << " -> s" << r << " [label=" << dot_string(text) << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string to_dot(const Tester& t) { return to_dot(t.automaton(), true); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << contents;
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
}

Model load_model(const std::string& path) { return parse_model(read_file(path)); }

} // namespace aia
