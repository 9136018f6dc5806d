#include "tradestat/diagnostics.hpp"

#include <ostream>

namespace tradestat {

std::size_t Diagnostics::count(std::string_view event_name) const {
    std::size_t n = 0;
    for (const auto& e : events_) {
        auto it = e.find("event");
        if (it != e.end() && it->is_string() && it->get_ref<const std::string&>() == event_name)
            ++n;
    }
    return n;
}

void Diagnostics::write_jsonl(std::ostream& os) const {
    for (const auto& e : events_)
        os << e.dump() << '\n';
}

} // namespace tradestat
