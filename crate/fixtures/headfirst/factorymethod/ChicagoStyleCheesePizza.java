package headfirst.factorymethod;

public class ChicagoStyleCheesePizza extends Pizza {
    public ChicagoStyleCheesePizza() {
        name = "Chicago Style Deep Dish Cheese Pizza";
        toppings.add("Grated Reggiano Cheese");
    }
}
