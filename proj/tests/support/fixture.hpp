#pragma once

// The running example plant: nine states, one unobservable event, sensor
// events c/d insertable and c/g erasable. Kept in sync with
// examples/paper-fig2.json by a test in json_io_test.cpp.

#include "desat/plant.hpp"

namespace desat::testing {

inline PlantModel paper_plant() {
    PlantModel plant;
    plant.states = {"0", "1", "2", "3", "4", "5", "6", "7", "8"};
    plant.initial = "0";
    plant.observable = {EventId("a"), EventId("c"), EventId("d"), EventId("g")};
    plant.unobservable = {EventId("b")};
    plant.insertable = {EventId("c"), EventId("d")};
    plant.erasable = {EventId("c"), EventId("g")};
    const char* triples[][3] = {
        {"0", "a", "1"}, {"1", "b", "2"}, {"1", "c", "3"}, {"2", "a", "5"}, {"3", "a", "4"},
        {"4", "g", "4"}, {"5", "c", "6"}, {"6", "a", "7"}, {"7", "b", "8"}, {"8", "d", "8"},
    };
    for (const auto& t : triples)
        plant.transitions.emplace(std::make_pair(StateId(t[0]), EventId(t[1])), StateId(t[2]));
    plant.validate();
    return plant;
}

} // namespace desat::testing
