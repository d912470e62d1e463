#pragma once
// Readable doctest failure messages for library values.

#include "doctest.h"

#include "adhesia/term.hpp"

namespace doctest {
template <>
struct StringMaker<adhesia::Term> {
    static String convert(const adhesia::Term& t) { return t.to_string().c_str(); }
};
}  // namespace doctest
