#pragma once

#include <array>
#include <string_view>

namespace itrace::words {

inline constexpr std::array<std::string_view, 50> kFamilies = {
    "Andrews",  "Chandler", "Baker",    "Carter",   "Dawson",   "Ellison", "Fischer", "Garcia",   "Hughes",
    "Ibarra",   "Jensen",   "Keller",   "Lambert",  "Moreno",   "Nakamura", "Owens",  "Patel",    "Quinn",
    "Ramirez",  "Schmidt",  "Tanaka",   "Underwood", "Vasquez", "Walsh",   "Xu",      "Young",    "Zimmerman",
    "Abbott",   "Becker",   "Castillo", "Dunn",     "Erikson",  "Foster",  "Gallagher", "Hale",   "Iverson",
    "Jordan",   "Kowalski", "Larsen",   "Mendez",   "Novak",    "Olsen",   "Pereira", "Reyes",    "Sullivan",
    "Thornton", "Ulrich",   "Vogel",    "Whitaker", "Yilmaz"};

inline constexpr std::array<std::string_view, 50> kLocations = {
    "Toronto (North America)",   "Denver (North America)",     "Monterrey (North America)",
    "Seattle (North America)",   "Atlanta (North America)",    "Vancouver (North America)",
    "Boston (North America)",    "Chicago (North America)",    "Ottawa (North America)",
    "Phoenix (North America)",   "Lima (South America)",       "Bogota (South America)",
    "Santiago (South America)",  "Quito (South America)",      "Recife (South America)",
    "Cordoba (South America)",   "Lyon (Europe)",              "Porto (Europe)",
    "Krakow (Europe)",           "Ghent (Europe)",             "Bergen (Europe)",
    "Turin (Europe)",            "Leipzig (Europe)",           "Seville (Europe)",
    "Tampere (Europe)",          "Brno (Europe)",              "Osaka (Asia)",
    "Busan (Asia)",              "Pune (Asia)",                "Cebu (Asia)",
    "Da Nang (Asia)",            "Chiang Mai (Asia)",          "Kaohsiung (Asia)",
    "Almaty (Asia)",             "Penang (Asia)",              "Surabaya (Asia)",
    "Nairobi (Africa)",          "Accra (Africa)",             "Dakar (Africa)",
    "Kigali (Africa)",           "Tunis (Africa)",             "Durban (Africa)",
    "Lusaka (Africa)",           "Perth (Oceania)",            "Hobart (Oceania)",
    "Wellington (Oceania)",      "Suva (Oceania)",             "Darwin (Oceania)",
    "Dunedin (Oceania)",         "Cairns (Oceania)"};

inline constexpr std::array<std::string_view, 50> kOrganizations = {
    "Northwind Traders", "Bluefin Analytics", "Cobalt Logistics",  "Driftwood Media",   "Evergreen Health",
    "Falcon Robotics",   "Granite Capital",   "Harbor Freight Co", "Ironbark Mining",   "Juniper Foods",
    "Kestrel Aviation",  "Lumen Energy",      "Maple Insurance",   "Nimbus Cloud",      "Orchid Pharma",
    "Pinnacle Builders", "Quarry Labs",       "Redwood Textiles",  "Summit Outfitters", "Tidewater Shipping",
    "Umbra Security",    "Vantage Optics",    "Willow Education",  "Xenon Materials",   "Yarrow Farms",
    "Zephyr Motors",     "Aurora Telecom",    "Beacon Legal",      "Cedar Hospitality", "Delta Fabrication",
    "Ember Games",       "Fjord Water",       "Gale Wind Power",   "Helix Biotech",     "Indigo Apparel",
    "Jasper Consulting", "Keystone Bank",     "Lattice Software",  "Meridian Travel",   "Nova Chemicals",
    "Onyx Steel",        "Prairie Grain",     "Quill Publishing",  "Ridge Outdoor",     "Sterling Audit",
    "Talon Defense",     "Upland Coffee",     "Vertex Surveying",  "Wren Architecture", "Zenith Retail"};

}  // namespace itrace::words
