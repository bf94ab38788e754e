#include "agora/catalog.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "agora/errors.hpp"
#include "agora/rng.hpp"

namespace agora {

using nlohmann::json;

const std::vector<std::string>& default_categories() {
    static const std::vector<std::string> kCategories = {
        "Video Games",      "Industrial Supplies", "Grocery",     "Musical Instruments",
        "Art Crafts",       "Cell Phone Accessories", "Patio Tools", "Office Products"};
    return kCategories;
}

void Catalog::add(Product p) {
    if (index_.count(p.product_id)) {
        throw ValidationError("duplicate product_id: " + p.product_id);
    }
    index_[p.product_id] = products_.size();
    products_.push_back(std::move(p));
}

const Product* Catalog::find(const std::string& product_id) const {
    const auto it = index_.find(product_id);
    return it == index_.end() ? nullptr : &products_[it->second];
}

const Product& Catalog::at(const std::string& product_id) const {
    const Product* p = find(product_id);
    if (!p) throw ValidationError("unknown product_id: " + product_id);
    return *p;
}

std::vector<const Product*> Catalog::by_category(const std::string& category) const {
    std::vector<const Product*> out;
    for (const auto& p : products_) {
        if (p.category == category) out.push_back(&p);
    }
    return out;
}

std::vector<std::string> Catalog::categories() const {
    std::set<std::string> set;
    for (const auto& p : products_) set.insert(p.category);
    return {set.begin(), set.end()};
}

void Catalog::save_jsonl(std::ostream& out) const {
    for (const auto& p : products_) {
        json j = {{"product_id", p.product_id}, {"title", p.title},
                  {"category", p.category},     {"price", p.price},
                  {"description", p.description}};
        if (!p.image_ref.empty()) j["image_ref"] = p.image_ref;
        if (!p.caption.empty()) j["caption"] = p.caption;
        out << j.dump() << '\n';
    }
}

void Catalog::save_jsonl_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    save_jsonl(out);
}

Catalog Catalog::load_jsonl(std::istream& in) {
    Catalog catalog;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ValidationError("malformed catalog record at line " + std::to_string(line_no) +
                                  ": " + e.what());
        }
        Product p;
        for (const char* field : {"product_id", "title", "category", "price", "description"}) {
            if (!j.contains(field)) {
                throw ValidationError("catalog record at line " + std::to_string(line_no) +
                                      " is missing required field \"" + field + "\"");
            }
        }
        p.product_id = j["product_id"].get<std::string>();
        p.title = j["title"].get<std::string>();
        p.category = j["category"].get<std::string>();
        if (!j["price"].is_number()) {
            throw ValidationError("catalog record at line " + std::to_string(line_no) +
                                  " has a non-numeric \"price\"");
        }
        p.price = j["price"].get<double>();
        if (p.price < 0.0) {
            throw ValidationError("catalog record at line " + std::to_string(line_no) +
                                  " has a negative \"price\"");
        }
        p.description = j["description"].get<std::string>();
        p.image_ref = j.value("image_ref", "");
        p.caption = j.value("caption", "");
        catalog.add(std::move(p));
    }
    return catalog;
}

Catalog Catalog::load_jsonl_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open catalog: " + path);
    return load_jsonl(in);
}

namespace {

struct CategoryFlavor {
    const char* noun_pool[6];
    const char* adjective_pool[4];
    double price_lo;
    double price_hi;
};

const std::map<std::string, CategoryFlavor>& flavors() {
    static const std::map<std::string, CategoryFlavor> kFlavors = {
        {"Video Games",
         {{"Controller", "Headset", "Racing Game", "Adventure Game", "Console Stand", "Arcade Stick"},
          {"Wireless", "Pro", "Retro", "Deluxe"},
          9.99, 199.99}},
        {"Industrial Supplies",
         {{"Work Gloves", "Safety Goggles", "Tool Chest", "Air Compressor", "Drill Bit Set", "Shop Vacuum"},
          {"Heavy-Duty", "Compact", "Industrial", "Reinforced"},
          7.49, 649.0}},
        {"Grocery",
         {{"Olive Oil", "Coffee Beans", "Pasta Pack", "Honey Jar", "Green Tea", "Trail Mix"},
          {"Organic", "Roasted", "Family-Size", "Artisanal"},
          2.99, 39.99}},
        {"Musical Instruments",
         {{"Acoustic Guitar", "Keyboard", "Ukulele", "Microphone", "Drum Pad", "Violin Bow"},
          {"Beginner", "Studio", "Concert", "Travel"},
          19.99, 899.0}},
        {"Art Crafts",
         {{"Watercolor Set", "Sketchbook", "Clay Kit", "Yarn Bundle", "Brush Set", "Easel"},
          {"Premium", "Washable", "Mini", "Complete"},
          4.99, 129.0}},
        {"Cell Phone Accessories",
         {{"Phone Case", "Charger Cable", "Screen Protector", "Car Mount", "Power Bank", "Earbuds"},
          {"Magnetic", "Fast", "Slim", "Rugged"},
          5.99, 89.99}},
        {"Patio Tools",
         {{"Garden Shears", "Hose Reel", "Leaf Blower", "Planter Box", "Fire Pit", "Patio Umbrella"},
          {"Foldable", "Cordless", "Weatherproof", "Extendable"},
          12.99, 429.0}},
        {"Office Products",
         {{"Notebook Set", "Desk Lamp", "Label Maker", "Ergonomic Chair", "Paper Shredder", "Monitor Stand"},
          {"Adjustable", "LED", "Portable", "Executive"},
          3.99, 349.0}},
    };
    return kFlavors;
}

} // namespace

Catalog make_synthetic_catalog(int count, std::uint64_t seed) {
    if (count < 1) throw ParamError("synthetic catalog needs count >= 1");
    Catalog catalog;
    const auto& cats = default_categories();
    Rng rng(derive_seed(seed, fnv1a("catalog")));
    for (int i = 0; i < count; ++i) {
        const std::string& category = cats[static_cast<std::size_t>(i) % cats.size()];
        const CategoryFlavor& flavor = flavors().at(category);
        Product p;
        char id[16];
        std::snprintf(id, sizeof(id), "P%04d", i + 1);
        p.product_id = id;
        p.category = category;
        const char* adjective = flavor.adjective_pool[rng.below(4)];
        const char* noun = flavor.noun_pool[rng.below(6)];
        p.title = std::string(adjective) + " " + noun;
        const double span = flavor.price_hi - flavor.price_lo;
        p.price = flavor.price_lo + std::floor(rng.uniform01() * span * 100.0) / 100.0;
        p.description = p.title + " in the " + category + " range, item " + p.product_id +
                        ", well reviewed and reliable.";
        p.image_ref = "img/" + p.product_id + ".png";
        p.caption = std::string(adjective) + " " + noun + " product photo";
        catalog.add(std::move(p));
    }
    return catalog;
}

} // namespace agora
