#ifndef AIA_ALPHABET_HH_
#define AIA_ALPHABET_HH_

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aia {

using LabelId = std::uint32_t;
using Word = std::vector<LabelId>;

/**
 * Disjoint input and output alphabets. Names are kept sorted; label ids
 * enumerate the inputs first and then the outputs, so two alphabets with the
 * same name sets assign the same ids.
 */
class Alphabet {
public:
    Alphabet() = default;
    /// Throws AlphabetError on duplicates, empty names or overlapping alphabets.
    Alphabet(std::vector<std::string> inputs, std::vector<std::string> outputs);

    std::size_t size() const { return inputs_.size() + outputs_.size(); }
    std::size_t num_inputs() const { return inputs_.size(); }
    std::size_t num_outputs() const { return outputs_.size(); }

    bool is_input(LabelId l) const { return l < inputs_.size(); }
    bool is_output(LabelId l) const { return l >= inputs_.size() && l < size(); }
    bool contains(LabelId l) const { return l < size(); }

    const std::string& name(LabelId l) const;
    /// `?a` for inputs and `!x` for outputs.
    std::string decorated(LabelId l) const;

    std::optional<LabelId> find(std::string_view name) const;
    /// Throws AlphabetError unless `name` is an input.
    LabelId input(std::string_view name) const;
    /// Throws AlphabetError unless `name` is an output.
    LabelId output(std::string_view name) const;

    const std::vector<std::string>& inputs() const { return inputs_; }
    const std::vector<std::string>& outputs() const { return outputs_; }

    /// Throws AlphabetError if `l` is out of range.
    void check(LabelId l) const;
    void check(const Word& w) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> inputs_;
    std::vector<std::string> outputs_;
};

/// Throws AlphabetError if the two alphabets differ.
void require_same_alphabet(const Alphabet& a, const Alphabet& b, std::string_view context);

/**
 * An input-failure trace: a label word optionally terminated by the refusal
 * of an input.
 */
struct FTrace {
    Word body;
    std::optional<LabelId> failure;

    std::size_t length() const { return body.size() + (failure ? 1 : 0); }

    friend bool operator==(const FTrace&, const FTrace&) = default;
    friend auto operator<=>(const FTrace&, const FTrace&) = default;
};

/// Throws AlphabetError unless the body is over `alphabet` and the failure names an input.
void check_ftrace(const Alphabet& alphabet, const FTrace& trace);

/// One observed step: a label, or the refusal of an input label.
struct Observation {
    LabelId label = 0;
    bool refused = false;

    friend bool operator==(const Observation&, const Observation&) = default;
};

/// Renders `?a !x ~b`; the empty trace renders as the empty string.
std::string format_trace(const Alphabet& alphabet, const FTrace& trace);
std::string format_word(const Alphabet& alphabet, const Word& word);
std::string format_observations(const Alphabet& alphabet, const std::vector<Observation>& obs);
std::string format_observation(const Alphabet& alphabet, const Observation& obs);

/// True for names that can be written without quotes in the text formats.
bool is_plain_name(std::string_view name);
/// The name itself when plain, otherwise a double-quoted string with `\` escapes.
std::string format_name(std::string_view name);

/// An observation sequence is an FTrace when a refusal can only occur last.
std::optional<FTrace> to_ftrace(const std::vector<Observation>& obs);
std::vector<Observation> to_observations(const FTrace& trace);

} // namespace aia

#endif // AIA_ALPHABET_HH_
