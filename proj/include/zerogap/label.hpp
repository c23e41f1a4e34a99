#pragma once

#include <array>
#include <string>
#include <string_view>

namespace zerogap {

enum class Label { A, B, C, D, E, F, G, H, I, J };

inline constexpr std::array<Label, 10> all_labels = {Label::A, Label::B, Label::C, Label::D, Label::E,
                                                     Label::F, Label::G, Label::H, Label::I, Label::J};

inline constexpr std::size_t index_of(Label l) { return static_cast<std::size_t>(l); }

inline char to_char(Label l) { return static_cast<char>('A' + static_cast<int>(l)); }
inline std::string to_string(Label l) { return std::string(1, to_char(l)); }

// Throws DomainError for anything but a single letter A..J.
Label parse_label(std::string_view text);

}  // namespace zerogap
