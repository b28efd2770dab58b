#include "heis/group.hpp"

#include <cctype>

namespace heis {

GroupPoint<QuadraticNumber> parse_group_point(std::string_view text, const std::optional<QuadraticContext>& ctx) {
    const auto open = text.find('[');
    const auto close = text.rfind(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        throw ScalarError("group point must be written [x, y, z]");
    for (std::size_t i = 0; i < text.size(); ++i)
        if ((i < open || i > close) && !std::isspace(static_cast<unsigned char>(text[i])))
            throw ScalarError("unexpected text around group point");
    std::string_view body = text.substr(open + 1, close - open - 1);
    QuadraticNumber parts[3];
    for (int k = 0; k < 3; ++k) {
        const auto comma = body.find(',');
        if ((k < 2) != (comma != std::string_view::npos))
            throw ScalarError("group point needs exactly three coordinates");
        parts[k] = QuadraticNumber::parse(body.substr(0, comma), ctx);
        if (k < 2) body = body.substr(comma + 1);
    }
    return {parts[0], parts[1], parts[2]};
}

}  // namespace heis
