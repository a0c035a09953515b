# Four corners of a 3 x 4 rectangle, step by step.
from vrbarcode import BinomialTable, parse_input, rips_barcodes
from vrbarcode.combinatorial import cns_decode
from vrbarcode.enumeration import simplices_of_dimension
from vrbarcode.filtration import filtration_sorted
from vrbarcode.oracle import all_apparent_pairs, rips_complex

m = parse_input("3,4,5,5,4,3")
print(m.as_array())

# every simplex with its diameter, in filtration order
table = BinomialTable(m.n, 5)
keys = [k for d in range(4) for k in simplices_of_dimension(d, m, table)]
for k in filtration_sorted(keys):
    print(cns_decode(k.index, k.dimension, m.n, table), "index", k.index, "diameter", k.diameter)

# pairs that can be read off without any reduction
c = rips_complex(m.rows, 2)
for i, j in sorted(all_apparent_pairs(c)):
    print("apparent:", c.simplices[i][::-1], c.simplices[j][::-1])

result = rips_barcodes(m, max_dim=2)
print("threshold", result.threshold)
for d, intervals in result.barcode.as_dict(2).items():
    print(d, intervals)
