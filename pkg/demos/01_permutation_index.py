"""
Permutation indices of small rows
=================================

A row of ``x`` values is identified by its position among all arrangements
of those values. This walks through the listings for a few small rows and
shows that ranking and unranking never need the full listing.
"""

from permindex import OrderingMode, enumerate_arrangements, rank, unrank

REV = OrderingMode.REVERSE_LEX
LEX = OrderingMode.LEX

# All arrangements of {2, 4, 9}, largest sequence first.
for pos, arr in enumerate(enumerate_arrangements([4, 9, 2], REV), 1):
    print(pos, arr)

# The row [4, 9, 2] sits third in that listing.
print("rank([4, 9, 2]) =", rank([4, 9, 2], REV))

# In ascending order the rows of [[1, 3], [4, 2]] get indices 1 and 2.
print("rank([1, 3], LEX) =", rank([1, 3], LEX))
print("rank([4, 2], LEX) =", rank([4, 2], LEX))

# The two orderings mirror each other when the values are distinct.
row = [1, 2, 3]
print(rank(row, REV), "+", rank(row, LEX), "= 3! + 1")

# Repeated values count once per distinct arrangement: {1, 1, 2} has 3.
print(enumerate_arrangements([1, 1, 2], REV))

# Unranking goes the other way, straight from the sorted values.
print("unrank({2,4,9}, 6) =", unrank([2, 4, 9], 6, REV))

# Nine values have 362880 arrangements; ranking one is still instant.
big = [9, 3, 7, 1, 8, 2, 6, 4, 5]
idx = rank(big)
print("rank of", big, "=", idx, "->", unrank(sorted(big), idx))
