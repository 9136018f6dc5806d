#ifndef TRADESTAT_DIAGNOSTICS_HPP
#define TRADESTAT_DIAGNOSTICS_HPP

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tradestat {

// Collects structured diagnostic events (skipped rows, unmatched keys,
// excluded values). Each event is one JSON object with at least an "event"
// field; callers add whatever context they have (row number, country, year).
// Events can be dumped as JSON lines so runs are auditable after the fact.
class Diagnostics {
public:
    void emit(nlohmann::json event) { events_.push_back(std::move(event)); }

    const std::vector<nlohmann::json>& events() const { return events_; }

    std::size_t count(std::string_view event_name) const;

    // One compact JSON object per line.
    void write_jsonl(std::ostream& os) const;

private:
    std::vector<nlohmann::json> events_;
};

} // namespace tradestat

#endif
