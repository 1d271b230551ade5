# KLV Core Package
