#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace agora {

struct Product {
    std::string product_id;
    std::string title;
    std::string category;
    double price = 0.0;
    std::string description;
    std::string image_ref;  // optional
    std::string caption;    // optional
};

// The eight fixture categories.
const std::vector<std::string>& default_categories();

// Product database, indexed by id and category. Loaded from line-delimited
// JSON records; malformed lines are rejected with their line numbers.
class Catalog {
public:
    void add(Product p);  // duplicate product_id -> ValidationError naming the id

    const std::vector<Product>& products() const { return products_; }
    std::size_t size() const { return products_.size(); }
    const Product* find(const std::string& product_id) const;
    const Product& at(const std::string& product_id) const;
    std::vector<const Product*> by_category(const std::string& category) const;
    std::vector<std::string> categories() const;  // sorted unique

    void save_jsonl(std::ostream& out) const;
    void save_jsonl_file(const std::string& path) const;
    static Catalog load_jsonl(std::istream& in);
    static Catalog load_jsonl_file(const std::string& path);

private:
    std::vector<Product> products_;
    std::map<std::string, std::size_t> index_;
};

// Deterministic synthetic fixture over the default categories.
Catalog make_synthetic_catalog(int count, std::uint64_t seed);

} // namespace agora
