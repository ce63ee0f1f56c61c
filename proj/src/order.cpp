#include "expansive/order.hpp"

#include "expansive/errors.hpp"

namespace expansive {

struct PartialOrder::Impl {
    OrderKind kind = OrderKind::Diagonal;
    bool regular = false;
    std::set<std::pair<std::int64_t, std::int64_t>> pairs;  // Table only
};

PartialOrder PartialOrder::usual(bool regular) {
    auto impl = std::make_shared<Impl>();
    impl->kind = OrderKind::Usual;
    impl->regular = regular;
    PartialOrder o;
    o.impl_ = std::move(impl);
    return o;
}

PartialOrder PartialOrder::example1(bool regular) {
    auto impl = std::make_shared<Impl>();
    impl->kind = OrderKind::Example1;
    impl->regular = regular;
    PartialOrder o;
    o.impl_ = std::move(impl);
    return o;
}

PartialOrder PartialOrder::from_table(std::vector<std::pair<std::int64_t, std::int64_t>> pairs,
                                      bool regular) {
    auto impl = std::make_shared<Impl>();
    impl->kind = OrderKind::Table;
    impl->regular = regular;
    impl->pairs.insert(pairs.begin(), pairs.end());
    PartialOrder o;
    o.impl_ = std::move(impl);
    return o;
}

PartialOrder PartialOrder::diagonal() {
    auto impl = std::make_shared<Impl>();
    impl->kind = OrderKind::Diagonal;
    impl->regular = true;
    PartialOrder o;
    o.impl_ = std::move(impl);
    return o;
}

OrderKind PartialOrder::kind() const { return impl_->kind; }

bool PartialOrder::regular() const { return impl_->regular; }

bool PartialOrder::leq(const Point& x, const Point& z) const {
    switch (impl_->kind) {
        case OrderKind::Usual:
            if (!x.has_coord() || !z.has_coord())
                throw Error(ErrorCode::DomainError, "usual order needs coordinates");
            return x.coord() <= z.coord();
        case OrderKind::Example1:
            // x = z, or x < z < 1: the point 1 relates only to itself.
            if (x == z) return true;
            if (!x.has_coord() || !z.has_coord())
                throw Error(ErrorCode::DomainError, "order needs coordinates");
            return x.coord() < z.coord() && z.coord() < 1.0;
        case OrderKind::Table:
            if (x.is_free() || z.is_free())
                throw Error(ErrorCode::DomainError, "table order needs enumerated points");
            return impl_->pairs.count({x.key(), z.key()}) > 0;
        case OrderKind::Diagonal:
            return x == z;
    }
    throw Error(ErrorCode::UnsupportedSpace, "unknown order kind");
}

}  // namespace expansive
